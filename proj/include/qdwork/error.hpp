// Copyright 2026 The qdwork Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QDWORK_ERROR_HPP
#define QDWORK_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace qdwork {

enum class Errc {
    invalid_argument,
    not_prime,             // p even or composite
    modulus_mismatch,      // p != 1 mod m
    omega_out_of_range,    // omega <= 0 or omega > 1/2
    omega_not_reduced,     // gcd(r, m) != 1
    rank_too_small,        // n < 2k or k < 1
    nonintegral_range,
    ring_mismatch,
    not_monic,
    zero_extraction,
    normalization_failed,
    budget_exceeded,
    singular_curve,
    supersingular,
    non_unit,
    corrupt_data,
    io_error,
    internal,
};

constexpr std::string_view errc_name(Errc c) noexcept {
    switch (c) {
        case Errc::invalid_argument: return "invalid_argument";
        case Errc::not_prime: return "not_prime";
        case Errc::modulus_mismatch: return "modulus_mismatch";
        case Errc::omega_out_of_range: return "omega_out_of_range";
        case Errc::omega_not_reduced: return "omega_not_reduced";
        case Errc::rank_too_small: return "rank_too_small";
        case Errc::nonintegral_range: return "nonintegral_range";
        case Errc::ring_mismatch: return "ring_mismatch";
        case Errc::not_monic: return "not_monic";
        case Errc::zero_extraction: return "zero_extraction";
        case Errc::normalization_failed: return "normalization_failed";
        case Errc::budget_exceeded: return "budget_exceeded";
        case Errc::singular_curve: return "singular_curve";
        case Errc::supersingular: return "supersingular";
        case Errc::non_unit: return "non_unit";
        case Errc::corrupt_data: return "corrupt_data";
        case Errc::io_error: return "io_error";
        case Errc::internal: return "internal";
    }
    return "unknown";
}

class Error : public std::runtime_error {
   public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

   private:
    Errc code_;
};

/// Process exit status for an error surfaced through the CLI:
/// 2 for invalid or degenerate input, 3 for resource aborts, 4 otherwise.
constexpr int exit_status(Errc c) noexcept {
    switch (c) {
        case Errc::budget_exceeded: return 3;
        case Errc::io_error:
        case Errc::internal:
        case Errc::zero_extraction:
        case Errc::normalization_failed: return 4;
        default: return 2;
    }
}

}  // namespace qdwork

#endif  // QDWORK_ERROR_HPP

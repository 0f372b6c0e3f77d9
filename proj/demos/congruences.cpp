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

// Runs every congruence check for a small two-framing quiver.

#include <iostream>

#include <qdwork/qdwork.hpp>

int main() {
    using namespace qdwork;
    const auto qp = validate(3, 4, 2, 1, 2, 3);
    TruncationStore store;
    bool ok = true;
    auto show = [&](const CongruenceReport& r) {
        ok = ok && r.holds;
        std::cout << to_json(r).dump() << "\n";
    };
    for (unsigned s = 1; s <= 2; ++s) {
        show(q_dwork_verify(store, qp, s));
        show(classical_dwork_verify(store, qp, s));
        for (unsigned l = 1; l <= s; ++l) show(root_of_unity_verify(store, qp, s, l));
    }
    for (const auto& r : split_identities_verify(qp, 1)) show(r);

    // a perturbed T_2 must break the deformed check
    const auto bad = q_dwork_verify(store, qp, 1, true);
    std::cout << "perturbed holds: " << std::boolalpha << bad.holds << "\n";
    return ok && !bad.holds ? 0 : 1;
}

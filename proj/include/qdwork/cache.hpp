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

// Persistent store of truncation records: one JSON document per
// (p, n, k, omega, s), written atomically and guarded by a SHA-256 checksum.

#ifndef QDWORK_CACHE_HPP
#define QDWORK_CACHE_HPP

#include <openssl/evp.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <unistd.h>

#include <nlohmann/json.hpp>

#include "qdwork/error.hpp"
#include "qdwork/trunc.hpp"

namespace qdwork {

inline constexpr std::string_view kRecordFormat = "qdwork.truncation/1";

inline std::string sha256_hex(std::string_view data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw Error(Errc::internal, "SHA-256 failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 0xf]);
    }
    return out;
}

namespace detail {

inline nlohmann::ordered_json record_body(const TruncationRecord& rec) {
    nlohmann::ordered_json j;
    j["format"] = kRecordFormat;
    j["params"] = to_json(rec.params);
    j["s"] = rec.s;
    j["sign"] = rec.sign;
    j["theta_sign"] = rec.theta_sign();
    j["theta"] = rec.theta;
    j["seconds"] = rec.seconds;
    j["poly"] = to_json(rec.poly);
    return j;
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const TruncationRecord& rec) {
    nlohmann::ordered_json j = detail::record_body(rec);
    j["checksum"] = sha256_hex(j.dump());
    return j;
}

/// Parses and checks a stored record; any inconsistency is corrupt_data.
inline TruncationRecord record_from_json(const nlohmann::json& j) {
    try {
        if (j.at("format").get<std::string>() != kRecordFormat) throw Error(Errc::corrupt_data, "unknown record format");
        TruncationRecord rec;
        rec.s = j.at("s").get<unsigned>();
        rec.params = params_from_json(j.at("params"), rec.s);
        rec.sign = j.at("sign").get<int>();
        rec.theta = j.at("theta").get<int>();
        rec.seconds = j.at("seconds").get<double>();
        rec.poly = bipoly_from_json(j.at("poly"));
        if ((rec.sign != 1 && rec.sign != -1) || (rec.theta != 0 && rec.theta != 1) ||
            j.at("theta_sign").get<int>() != rec.theta_sign())
            throw Error(Errc::corrupt_data, "inconsistent sign fields");
        if (rec.theta != theta_parity(rec.params, rec.s)) throw Error(Errc::corrupt_data, "theta does not match parameters");
        if (sha256_hex(detail::record_body(rec).dump()) != j.at("checksum").get<std::string>())
            throw Error(Errc::corrupt_data, "checksum mismatch");
        return rec;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::corrupt_data, std::string("malformed record: ") + e.what());
    } catch (const Error& e) {
        if (e.code() == Errc::corrupt_data) throw;
        throw Error(Errc::corrupt_data, std::string("invalid record: ") + e.what());
    }
}

inline std::filesystem::path record_path(const std::filesystem::path& dir, const std::string& key) {
    return dir / (key + ".json");
}

/// Writes to a private temporary file in the same directory and renames it
/// over the destination, so readers see either the old or the new document.
inline void write_record(const std::filesystem::path& dir, const TruncationRecord& rec) {
    static std::atomic<unsigned long> counter{0};
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(Errc::io_error, "cannot create cache directory " + dir.string() + ": " + ec.message());
    const auto dest = record_path(dir, rec.cache_key());
    std::ostringstream suffix;
    suffix << ".tmp." << ::getpid() << '.' << std::hash<std::thread::id>{}(std::this_thread::get_id()) << '.'
           << counter.fetch_add(1);
    auto tmp = dest;
    tmp += suffix.str();
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(Errc::io_error, "cannot write " + tmp.string());
        out << to_json(rec).dump() << '\n';
        out.flush();
        if (!out) throw Error(Errc::io_error, "short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, dest, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(Errc::io_error, "cannot publish " + dest.string());
    }
}

inline TruncationRecord read_record(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot read " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::corrupt_data, std::string("unparsable record: ") + e.what());
    }
    return record_from_json(j);
}

/// Memoizing source of truncations shared by the congruence checks. With a
/// directory configured, records are loaded from and saved to disk; a corrupt
/// entry is reported, recomputed and overwritten.
class TruncationStore {
   public:
    explicit TruncationStore(ExtractOptions opts = {}, std::optional<std::filesystem::path> dir = std::nullopt)
        : opts_(std::move(opts)), dir_(std::move(dir)) {}

    const TruncationRecord& get(const QuiverParams& qp, unsigned s) {
        std::lock_guard lock(mu_);
        const std::string key = qp.key() + "_s" + std::to_string(s);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        if (dir_) {
            const auto path = record_path(*dir_, key);
            if (std::filesystem::exists(path)) {
                try {
                    TruncationRecord rec = read_record(path);
                    if (rec.params == qp && rec.s == s) {
                        ++hits_;
                        return memo_.emplace(key, std::move(rec)).first->second;
                    }
                    warn("cache entry " + path.string() + " holds different parameters; recomputing");
                } catch (const Error& e) {
                    warn("cache entry " + path.string() + " rejected (" + e.what() + "); recomputing");
                }
            }
        }
        TruncationRecord rec = truncation_q(qp, s, opts_);
        if (dir_) write_record(*dir_, rec);
        return memo_.emplace(key, std::move(rec)).first->second;
    }

    /// Classical T_s(z) by the q = 1 extraction route (memory only).
    const UPoly& classical(const QuiverParams& qp, unsigned s) {
        std::lock_guard lock(mu_);
        const std::string key = qp.key() + "_s" + std::to_string(s);
        if (auto it = classical_.find(key); it != classical_.end()) return it->second;
        return classical_.emplace(key, truncation_classical(qp, s, opts_)).first->second;
    }

    const ExtractOptions& options() const noexcept { return opts_; }
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }
    std::size_t disk_hits() const noexcept { return hits_; }

    /// Diagnostic sink for rejected cache entries; defaults to collecting only.
    std::function<void(const std::string&)> on_warning;

   private:
    void warn(const std::string& msg) {
        warnings_.push_back(msg);
        if (on_warning) on_warning(msg);
    }

    ExtractOptions opts_;
    std::optional<std::filesystem::path> dir_;
    std::mutex mu_;
    std::map<std::string, TruncationRecord> memo_;
    std::map<std::string, UPoly> classical_;
    std::vector<std::string> warnings_;
    std::size_t hits_ = 0;
};

}  // namespace qdwork

#endif  // QDWORK_CACHE_HPP

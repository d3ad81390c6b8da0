#pragma once

#include <gmpxx.h>

#include <httplib.h>

#include <unistd.h>

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sequence.hpp"

namespace hardinian {

// One OEIS b-file: "index value" data lines, '#' comment lines, contiguous
// strictly increasing indices.
struct BFile {
    std::string id;  // "A" + six digits; may be empty when parsed from bare text
    long offset = 0;
    std::vector<std::pair<long, mpz_class>> entries;
};

inline bool valid_oeis_id(const std::string& id) {
    if (id.size() != 7 || id[0] != 'A') return false;
    for (std::size_t i = 1; i < id.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(id[i]))) return false;
    return true;
}

inline void require_valid_id(const std::string& id) {
    if (!valid_oeis_id(id))
        throw std::invalid_argument("OEIS id must be 'A' followed by six digits, got '" + id + "'");
}

// Parses b-file text. Comment ('#') and blank lines are skipped; malformed
// lines report their line number; indices must be contiguous.
inline BFile parse_bfile(const std::string& text, std::string id = "") {
    if (!id.empty()) require_valid_id(id);
    BFile b;
    b.id = std::move(id);

    std::istringstream in(text);
    std::string line;
    long line_no = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t pos = line.find_first_not_of(" \t");
        if (pos == std::string::npos || line[pos] == '#') continue;

        std::istringstream fields(line);
        std::string index_token, value_token, extra;
        if (!(fields >> index_token >> value_token) || (fields >> extra))
            throw std::runtime_error("b-file: malformed line " + std::to_string(line_no));
        long index = 0;
        try {
            std::size_t used = 0;
            index = std::stol(index_token, &used);
            if (used != index_token.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw std::runtime_error("b-file: bad index on line " + std::to_string(line_no));
        }
        mpz_class value;
        if (mpz_set_str(value.get_mpz_t(), value_token.c_str(), 10) != 0)
            throw std::runtime_error("b-file: bad value on line " + std::to_string(line_no));

        if (first) {
            b.offset = index;
            first = false;
        } else if (index != b.entries.back().first + 1) {
            throw std::runtime_error("b-file: non-contiguous index " + std::to_string(index) +
                                     " on line " + std::to_string(line_no));
        }
        b.entries.emplace_back(index, std::move(value));
    }
    return b;
}

inline std::string write_bfile(const BFile& b) {
    std::ostringstream out;
    for (const auto& [index, value] : b.entries) out << index << ' ' << value.get_str() << '\n';
    return out.str();
}

inline BFile bfile_from_sequence(const Sequence& seq, std::string id = "") {
    BFile b;
    b.id = std::move(id);
    b.offset = seq.offset;
    for (std::size_t i = 0; i < seq.values.size(); ++i)
        b.entries.emplace_back(seq.offset + static_cast<long>(i), seq.values[i]);
    return b;
}

inline Sequence sequence_from_bfile(const BFile& b) {
    Sequence seq;
    seq.label = b.id;
    seq.offset = b.offset;
    for (const auto& [index, value] : b.entries) seq.values.push_back(value);
    return seq;
}

namespace detail {

inline std::string bfile_name(const std::string& id) {
    return "b" + id.substr(1) + ".txt";
}

inline std::string oeis_base_url() {
    if (const char* env = std::getenv("HARDINIAN_OEIS_BASE_URL")) return env;
    return "https://oeis.org";
}

}  // namespace detail

// Returns the cached copy when present; otherwise (online only) performs one
// HTTP GET of the b-file for `id`, stores it verbatim in cache_dir
// (write-temp-then-rename), and parses it. Offline with a cold cache is an
// error. The base URL can be overridden with HARDINIAN_OEIS_BASE_URL.
inline BFile fetch(const std::string& id, const std::filesystem::path& cache_dir,
                   bool offline) {
    require_valid_id(id);
    const std::filesystem::path cache_file = cache_dir / detail::bfile_name(id);

    if (std::filesystem::exists(cache_file)) {
        std::ifstream in(cache_file);
        std::stringstream buf;
        buf << in.rdbuf();
        return parse_bfile(buf.str(), id);
    }
    if (offline)
        throw std::runtime_error("fetch: cache miss for " + id + " in offline mode (" +
                                 cache_file.string() + ")");

    const std::string base = detail::oeis_base_url();
    httplib::Client client(base);
    client.set_follow_location(true);
    const std::string path = "/" + id + "/" + detail::bfile_name(id);
    auto res = client.Get(path);
    if (!res)
        throw std::runtime_error("fetch: network failure for " + base + path + " (" +
                                 httplib::to_string(res.error()) + ")");
    if (res->status != 200)
        throw std::runtime_error("fetch: HTTP status " + std::to_string(res->status) + " for " +
                                 base + path);

    const BFile parsed = parse_bfile(res->body, id);  // validate before caching

    std::filesystem::create_directories(cache_dir);
    const std::filesystem::path tmp =
        cache_dir / (detail::bfile_name(id) + ".tmp" + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary);
        out << res->body;
    }
    std::filesystem::rename(tmp, cache_file);
    return parsed;
}

// remote_index = scale * local_index + shift. OEIS offsets vary; the map is
// explicit rather than guessed.
struct IndexMap {
    long scale = 1;
    long shift = 0;
    long operator()(long n) const { return scale * n + shift; }
};

struct CrosscheckEntry {
    long local_index = 0;
    long remote_index = 0;
    mpz_class local_value;
    mpz_class remote_value;
    bool equal = false;
};

struct CrosscheckReport {
    bool pass = false;
    std::vector<CrosscheckEntry> checked;

    std::size_t mismatches() const {
        std::size_t count = 0;
        for (const auto& e : checked) count += e.equal ? 0 : 1;
        return count;
    }
};

// Per-index comparison over the overlapping range after applying the index
// map; pass iff every overlapping value agrees. Empty overlap is an error.
inline CrosscheckReport crosscheck(const Sequence& local, const BFile& remote,
                                   IndexMap map = {}) {
    CrosscheckReport report;
    for (long n = local.first_index(); n <= local.last_index(); ++n) {
        const long rn = map(n);
        const long pos = rn - remote.offset;
        if (pos < 0 || pos >= static_cast<long>(remote.entries.size())) continue;
        CrosscheckEntry e;
        e.local_index = n;
        e.remote_index = rn;
        e.local_value = local.at(n);
        e.remote_value = remote.entries[static_cast<std::size_t>(pos)].second;
        e.equal = (e.local_value == e.remote_value);
        report.checked.push_back(std::move(e));
    }
    if (report.checked.empty())
        throw std::invalid_argument("crosscheck: empty index overlap");
    report.pass = (report.mismatches() == 0);
    return report;
}

}  // namespace hardinian

#pragma once

#include <gmpxx.h>

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hardinian {

// An offset-indexed list of arbitrary-precision integers; indices run
// contiguously from `offset`.
struct Sequence {
    std::string label;
    long offset = 1;
    std::vector<mpz_class> values;

    long first_index() const { return offset; }
    long last_index() const { return offset + static_cast<long>(values.size()) - 1; }
    bool contains(long n) const { return n >= first_index() && n <= last_index(); }

    const mpz_class& at(long n) const {
        if (!contains(n))
            throw std::out_of_range("Sequence::at: index " + std::to_string(n) +
                                    " outside [" + std::to_string(first_index()) + ", " +
                                    std::to_string(last_index()) + "]");
        return values[static_cast<std::size_t>(n - offset)];
    }
};

// OEIS b-file lines: "index value", one per line, from the offset upward.
inline std::string to_bfile_text(const Sequence& seq) {
    std::ostringstream out;
    for (std::size_t i = 0; i < seq.values.size(); ++i)
        out << seq.offset + static_cast<long>(i) << ' ' << seq.values[i].get_str() << '\n';
    return out.str();
}

inline std::string to_csv_text(const Sequence& seq) {
    std::ostringstream out;
    out << "n,value\n";
    for (std::size_t i = 0; i < seq.values.size(); ++i)
        out << seq.offset + static_cast<long>(i) << ',' << seq.values[i].get_str() << '\n';
    return out.str();
}

}  // namespace hardinian

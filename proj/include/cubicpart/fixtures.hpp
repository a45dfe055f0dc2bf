/**
 * @file fixtures.hpp
 * @brief Line format for A-polynomial rows and the published reference tables.
 *
 * One row per line: `kind i : j1=c1 j2=c2 ...` with decimal exact integers.
 * `#` starts a comment line. Kinds in use: `A` and `FA` (rows of U(A^i) and
 * U(F A^i), including seeds with i <= 0), `sigma` (the symmetric functions,
 * i = 1..5) and `piA` (printed 5-adic orders of a_ij, as j=value pairs).
 */
#ifndef CUBICPART_FIXTURES_HPP
#define CUBICPART_FIXTURES_HPP

#include <gmpxx.h>

#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "apoly.hpp"
#include "error.hpp"

namespace cubicpart {

struct FixtureRow {
    std::string kind;
    long index = 0;
    std::vector<std::pair<long, mpz_class>> entries;

    APoly to_apoly() const {
        std::vector<mpz_class> c;
        for (const auto& [j, v] : entries) {
            if (j < 0)
                throw Error(ErrorKind::parse_error, "negative column in " + kind + " row");
            if (static_cast<std::size_t>(j) >= c.size())
                c.resize(static_cast<std::size_t>(j) + 1);
            c[static_cast<std::size_t>(j)] += v;
        }
        return APoly(std::move(c));
    }
};

inline std::string format_fixture_row(const std::string& kind, long index, const APoly& p) {
    std::ostringstream os;
    os << kind << ' ' << index << " :";
    const auto c = p.coeffs();
    for (std::size_t j = 0; j < c.size(); ++j)
        if (c[j] != 0)
            os << ' ' << j << '=' << c[j].get_str();
    return os.str();
}

inline FixtureRow parse_fixture_row(const std::string& line) {
    std::istringstream is(line);
    FixtureRow row;
    std::string colon;
    if (!(is >> row.kind >> row.index >> colon) || colon != ":")
        throw Error(ErrorKind::parse_error, "malformed fixture row '" + line + "'");
    std::string tok;
    while (is >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorKind::parse_error, "bad entry '" + tok + "' in '" + line + "'");
        long j = 0;
        try {
            j = std::stol(tok.substr(0, eq));
        } catch (const std::exception&) {
            throw Error(ErrorKind::parse_error, "bad column in '" + tok + "'");
        }
        mpz_class v;
        if (v.set_str(tok.substr(eq + 1), 10) != 0)
            throw Error(ErrorKind::parse_error, "bad value in '" + tok + "'");
        row.entries.emplace_back(j, v);
    }
    return row;
}

inline std::vector<FixtureRow> read_fixture_rows(std::istream& is) {
    std::vector<FixtureRow> rows;
    std::string line;
    while (std::getline(is, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        rows.push_back(parse_fixture_row(line));
    }
    return rows;
}

/// Values as printed in the published source: seeds, sigma list, appendix
/// rows and the table of 5-adic orders. Reference data to diff against, not ground truth.
struct PublishedTables {
    std::map<std::pair<BasisKind, long>, APoly> rows;
    std::map<int, APoly> sigma;
    /// (i, j, printed order) in printed order.
    std::vector<std::pair<std::pair<long, long>, long>> pi_a;

    const APoly* row(BasisKind kind, long i) const {
        const auto it = rows.find({kind, i});
        return it == rows.end() ? nullptr : &it->second;
    }

    static PublishedTables from_rows(const std::vector<FixtureRow>& fixture) {
        PublishedTables t;
        for (const auto& r : fixture) {
            if (r.kind == "A" || r.kind == "FA") {
                t.rows[{r.kind == "A" ? BasisKind::a : BasisKind::fa, r.index}] = r.to_apoly();
            } else if (r.kind == "sigma") {
                t.sigma[static_cast<int>(r.index)] = r.to_apoly();
            } else if (r.kind == "piA") {
                for (const auto& [j, v] : r.entries)
                    t.pi_a.push_back({{r.index, j}, v.get_si()});
            } else {
                throw Error(ErrorKind::parse_error, "unknown fixture kind '" + r.kind + "'");
            }
        }
        return t;
    }

    static PublishedTables load(const std::string& path) {
        std::ifstream in(path);
        if (!in)
            throw Error(ErrorKind::invalid_argument, "cannot open fixture file '" + path + "'");
        return from_rows(read_fixture_rows(in));
    }
};

inline constexpr const char* kFixtureEnvVar = "CUBICPART_FIXTURES";
inline constexpr const char* kPublishedTablesFile = "published_tables.txt";

/// $CUBICPART_FIXTURES, else the directory configured at build time, else `fixtures`.
inline std::string default_fixture_dir() {
    if (const char* env = std::getenv(kFixtureEnvVar); env != nullptr && *env != '\0')
        return env;
#ifdef CUBICPART_DEFAULT_FIXTURE_DIR
    return CUBICPART_DEFAULT_FIXTURE_DIR;
#else
    return "fixtures";
#endif
}

inline PublishedTables load_published_tables(const std::string& dir = default_fixture_dir()) {
    return PublishedTables::load(dir + "/" + kPublishedTablesFile);
}

} // namespace cubicpart

#endif // CUBICPART_FIXTURES_HPP

#ifndef CUBICPART_REPORT_HPP
#define CUBICPART_REPORT_HPP

#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace cubicpart {

/// pass: the check holds; warn: a printed table disagrees with a recomputed
/// value; fail: a theorem, lemma or identity is violated.
enum class Outcome { pass, warn, fail };

/// One line of a verification report, e.g.
/// `LEMMA 4.1 i=2 j=10 pi=15 bound=12 status=OK` or
/// `THM 1.2 alpha=0 n=3 index=97 residue=0 mod=5 PASS`.
struct Check {
    std::string tag;
    /// Ordered fields; an empty key prints the value alone.
    std::vector<std::pair<std::string, std::string>> fields;
    std::string status;
    Outcome outcome = Outcome::pass;
    /// Print the status as `status=X` instead of a bare trailing token.
    bool keyed_status = true;

    std::string text() const {
        std::ostringstream os;
        os << tag;
        for (const auto& [k, v] : fields) {
            os << ' ';
            if (!k.empty())
                os << k << '=';
            os << v;
        }
        os << (keyed_status ? " status=" : " ") << status;
        return os.str();
    }

    const std::string* field(const std::string& key) const {
        for (const auto& kv : fields)
            if (kv.first == key)
                return &kv.second;
        return nullptr;
    }
};

class Report {
public:
    void add(Check c) { checks_.push_back(std::move(c)); }

    void append(const Report& other) { checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end()); }

    const std::vector<Check>& checks() const { return checks_; }
    std::size_t size() const { return checks_.size(); }

    std::size_t count(Outcome o) const {
        std::size_t n = 0;
        for (const auto& c : checks_)
            n += c.outcome == o ? 1 : 0;
        return n;
    }

    bool ok() const { return count(Outcome::fail) == 0; }

    std::vector<Check> with_outcome(Outcome o) const {
        std::vector<Check> out;
        for (const auto& c : checks_)
            if (c.outcome == o)
                out.push_back(c);
        return out;
    }

private:
    std::vector<Check> checks_;
};

} // namespace cubicpart

#endif // CUBICPART_REPORT_HPP

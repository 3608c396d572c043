#include "opaq/intset.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace opaq {

EventuallyPeriodicIntSet EventuallyPeriodicIntSet::finite(std::vector<std::int64_t> members) {
    EventuallyPeriodicIntSet s;
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (!members.empty() && members.front() < 0) throw std::invalid_argument("negative member");
    s.members_ = std::move(members);
    return s;
}

EventuallyPeriodicIntSet EventuallyPeriodicIntSet::from_lasso(const std::vector<bool>& bits, std::size_t loop_start) {
    if (loop_start >= bits.size()) throw std::invalid_argument("lasso loop must be non-empty");
    std::vector<bool> prefix(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(loop_start));
    std::vector<bool> cycle(bits.begin() + static_cast<std::ptrdiff_t>(loop_start), bits.end());

    EventuallyPeriodicIntSet s;
    if (std::none_of(cycle.begin(), cycle.end(), [](bool b) { return b; })) {
        for (std::size_t k = 0; k < prefix.size(); ++k)
            if (prefix[k]) s.members_.push_back(static_cast<std::int64_t>(k));
        return s;
    }

    // Smallest period dividing the loop length.
    const std::size_t n = cycle.size();
    std::size_t p = n;
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) ok = cycle[i] == cycle[(i + d) % n];
        if (ok) {
            p = d;
            break;
        }
    }
    cycle.resize(p);

    // Pull the loop start backwards while the prefix agrees with the pattern.
    while (!prefix.empty() && prefix.back() == cycle.back()) {
        prefix.pop_back();
        std::rotate(cycle.rbegin(), cycle.rbegin() + 1, cycle.rend());
    }

    s.threshold_ = static_cast<std::int64_t>(prefix.size());
    s.period_ = static_cast<std::int64_t>(p);
    for (std::size_t k = 0; k < prefix.size(); ++k)
        if (prefix[k]) s.members_.push_back(static_cast<std::int64_t>(k));
    for (std::size_t r = 0; r < p; ++r)
        if (cycle[r]) s.residues_.push_back(static_cast<std::int64_t>(r));
    return s;
}

bool EventuallyPeriodicIntSet::contains(std::int64_t k) const {
    if (k < 0) return false;
    if (period_ > 0 && k >= threshold_)
        return std::binary_search(residues_.begin(), residues_.end(), (k - threshold_) % period_);
    return std::binary_search(members_.begin(), members_.end(), k);
}

EventuallyPeriodicIntSet EventuallyPeriodicIntSet::shifted(std::int64_t offset) const {
    EventuallyPeriodicIntSet s = *this;
    for (auto& m : s.members_) m += offset;
    if (period_ > 0) s.threshold_ += offset;
    if ((!s.members_.empty() && s.members_.front() < 0) || s.threshold_ < 0)
        throw std::invalid_argument("shift would produce negative members");
    return s;
}

std::string EventuallyPeriodicIntSet::to_string() const {
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < members_.size(); ++i) out << (i ? ", " : "") << members_[i];
    out << '}';
    if (period_ > 0) {
        out << " ∪ {" << threshold_ << " + r + " << period_ << "k : r ∈ {";
        for (std::size_t i = 0; i < residues_.size(); ++i) out << (i ? ", " : "") << residues_[i];
        out << "}}";
    }
    return out.str();
}

}  // namespace opaq

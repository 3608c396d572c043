#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace opaq {

// Set of naturals of the form F ∪ {threshold + r + k·period : r ∈ R, k ≥ 0}
// with F below the threshold. Kept with minimal period and threshold; a
// finite set has period 0.
class EventuallyPeriodicIntSet {
public:
    EventuallyPeriodicIntSet() = default;

    static EventuallyPeriodicIntSet finite(std::vector<std::int64_t> members);

    // bits[k] is membership of k; from index `loop_start` the pattern
    // bits[loop_start, size) repeats forever.
    static EventuallyPeriodicIntSet from_lasso(const std::vector<bool>& bits, std::size_t loop_start);

    [[nodiscard]] bool contains(std::int64_t k) const;
    [[nodiscard]] bool empty() const { return members_.empty() && period_ == 0; }
    [[nodiscard]] bool is_finite() const { return period_ == 0; }

    [[nodiscard]] const std::vector<std::int64_t>& finite_members() const { return members_; }
    [[nodiscard]] std::int64_t threshold() const { return threshold_; }
    [[nodiscard]] std::int64_t period() const { return period_; }
    [[nodiscard]] const std::vector<std::int64_t>& residues() const { return residues_; }

    // {k + offset : k in this}
    [[nodiscard]] EventuallyPeriodicIntSet shifted(std::int64_t offset) const;

    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const EventuallyPeriodicIntSet&, const EventuallyPeriodicIntSet&) = default;

private:
    std::vector<std::int64_t> members_;
    std::int64_t threshold_ = 0;
    std::int64_t period_ = 0;
    std::vector<std::int64_t> residues_;
};

}  // namespace opaq

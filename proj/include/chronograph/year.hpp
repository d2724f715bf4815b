#pragma once

#include <cstdint>
#include <optional>

namespace chronograph {

// Years are signed integers with no year 0: -3000 means 3000 BC, 1950 means
// 1950 CE. The study window for network slices is [-3000, 1950].
using Year = std::int32_t;

constexpr Year kSliceMin = -3000;
constexpr Year kSliceMax = 1950;

// Births from this year on are treated as possibly living when no death
// year is known; earlier births get an imputed death (see impute below).
constexpr Year kModernBirthCutoff = 1900;
constexpr int kImputedLifespanYears = 70;
constexpr int kMaxLifespanYears = 120;

constexpr bool year_valid(Year y) { return y != 0; }
constexpr bool year_in_slice_range(Year y) {
    return year_valid(y) && y >= kSliceMin && y <= kSliceMax;
}

// Bijection between the gapless "year line" and historical years: BC years
// map to themselves, CE year y maps to y-1. All spans and stepping are done
// on the line so that crossing 1 BC -> 1 CE counts as one year.
constexpr std::int64_t year_to_line(Year y) { return y < 0 ? y : std::int64_t(y) - 1; }
constexpr Year line_to_year(std::int64_t i) {
    return static_cast<Year>(i < 0 ? i : i + 1);
}
constexpr Year year_add(Year y, int delta) { return line_to_year(year_to_line(y) + delta); }
constexpr std::int64_t years_between(Year from, Year to) {
    return year_to_line(to) - year_to_line(from);
}

struct Lifespan {
    Year birth = 0;
    std::optional<Year> death;  // empty = possibly living (modern birth)
    bool approx = false;        // circa dates or imputed death

    // Treats a missing death year as open-ended.
    Year effective_death() const { return death.value_or(kEffectiveLivingDeath); }

    bool alive_in(Year y) const { return birth <= y && y <= effective_death(); }

    static constexpr Year kEffectiveLivingDeath = 1 << 29;
};

// Closed-interval overlap under signed comparison; symmetric, and a death in
// the same year as the other's birth counts.
constexpr bool lifespans_overlap(const Lifespan& a, const Lifespan& b) {
    Year lo = a.birth > b.birth ? a.birth : b.birth;
    Year da = a.death ? *a.death : Lifespan::kEffectiveLivingDeath;
    Year db = b.death ? *b.death : Lifespan::kEffectiveLivingDeath;
    Year hi = da < db ? da : db;
    return lo <= hi;
}

// Enumerates every `step`-th year of [from, to] on the no-zero year line.
// With step 1 this yields each valid year once; larger steps keep counting
// in line years, so a grid starting at -3000 with step 100 passes through
// 1 CE rather than the nonexistent year 0.
class YearGrid {
  public:
    YearGrid(Year from, Year to, int step) : to_(to), step_(step), cur_(year_to_line(from)) {}

    std::optional<Year> next() {
        Year y = line_to_year(cur_);
        if (y > to_) return std::nullopt;
        cur_ += step_;
        return y;
    }

  private:
    Year to_;
    int step_;
    std::int64_t cur_;
};

}  // namespace chronograph

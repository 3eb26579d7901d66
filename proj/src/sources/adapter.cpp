#include "spar/sources/adapter.hpp"

#include "spar/errors.hpp"

namespace spar::sources {

void SearchPage::validate() const {
  for (const auto& record : records) {
    record.validate();
    if (record.source != source) {
      throw ValidationError("record source " + to_string(record.source) +
                            " does not match page source " + to_string(source));
    }
    if (record.refchain_depth != 0) {
      throw ValidationError("search results must have refchain depth 0");
    }
  }
}

bool within_bounds(const std::optional<int>& year, const TemporalConstraint& temporal) {
  if (!year) return true;  // unknown year passes; the judge filters downstream
  if (temporal.lower && *year < temporal.lower->year) return false;
  if (temporal.upper && *year > temporal.upper->year) return false;
  return true;
}

}  // namespace spar::sources

#include "minones/classifier.hpp"

#include <algorithm>

namespace minones {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kPtime: return "PTIME";
    case Verdict::kPolyKernel: return "POLY_KERNEL";
    case Verdict::kNoPolyKernel: return "NO_POLY_KERNEL";
  }
  return "?";
}

std::string_view to_string(PtimeReason r) {
  switch (r) {
    case PtimeReason::kNone: return "none";
    case PtimeReason::kZeroValid: return "zero_valid";
    case PtimeReason::kHorn: return "horn";
    case PtimeReason::kWidth2Affine: return "width2_affine";
  }
  return "?";
}

bool Classification::all_mergeable() const {
  return std::all_of(relations.begin(), relations.end(),
                     [](const auto& entry) { return entry.second.mergeable; });
}

Classification classify_language(const ConstraintLanguage& language) {
  Classification c;
  for (const auto& r : language.relations()) c.relations.emplace_back(r.name(), property_record(r));

  auto all = [&](bool PropertyRecord::*flag) {
    return std::all_of(c.relations.begin(), c.relations.end(),
                       [flag](const auto& entry) { return entry.second.*flag; });
  };
  if (all(&PropertyRecord::zero_valid)) {
    c.ptime_reason = PtimeReason::kZeroValid;
  } else if (all(&PropertyRecord::horn)) {
    c.ptime_reason = PtimeReason::kHorn;
  } else if (all(&PropertyRecord::width2_affine)) {
    c.ptime_reason = PtimeReason::kWidth2Affine;
  }

  if (c.ptime_reason != PtimeReason::kNone) {
    c.verdict = Verdict::kPtime;
    return c;
  }
  for (const auto& [name, rec] : c.relations) {
    if (!rec.mergeable) {
      c.verdict = Verdict::kNoPolyKernel;
      c.witness = NamedWitness{name, *rec.witness};
      return c;
    }
  }
  c.verdict = Verdict::kPolyKernel;
  return c;
}

}  // namespace minones

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "minones/formula.hpp"
#include "minones/relation.hpp"

namespace minones {

enum class Verdict { kPtime, kPolyKernel, kNoPolyKernel };
enum class PtimeReason { kNone, kZeroValid, kHorn, kWidth2Affine };

std::string_view to_string(Verdict v);
std::string_view to_string(PtimeReason r);

struct NamedWitness {
  std::string relation;
  WitnessQuad quad;
};

struct Classification {
  Verdict verdict = Verdict::kPolyKernel;
  std::vector<std::pair<std::string, PropertyRecord>> relations;
  PtimeReason ptime_reason = PtimeReason::kNone;
  /// First non-mergeable relation in language order; present iff verdict is
  /// kNoPolyKernel.
  std::optional<NamedWitness> witness;

  bool all_mergeable() const;
};

/// Polynomial-time cases take precedence: zero-valid, then Horn, then
/// width-2 affine. Otherwise the verdict splits on mergeability.
Classification classify_language(const ConstraintLanguage& language);

}  // namespace minones

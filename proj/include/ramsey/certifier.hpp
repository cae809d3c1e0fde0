#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ramsey/decomposition.hpp"
#include "ramsey/lemmas.hpp"
#include "ramsey/structures.hpp"

namespace ramsey {

// Scaled parameter set for the stability certifier.  All comparisons are
// exact; eta-power thresholds become Alg values.
struct ScaledParams {
  Rational alpha1 = rat(1);
  Rational alpha2 = rat(1);
  Rational alpha3 = rat(1);
  Rational eta = rat(1, 100);
  long k = 100;
  bool enforce_scaling = false;  // 2 >= a3 >= 1 >= a1 >= a2

  Rational c() const { return threshold_c(alpha1, alpha2, alpha3); }
  Rational eta_b2() const;
  long k_window_low() const;   // ceil((c - eta) k)
  long k_window_high() const;  // floor((c - eta/2) k)

  // Throws PreconditionError on malformed parameters; `slack` relaxes the
  // eta ceiling (slack = 1 enforces the paper bound).
  void validate(const Rational& slack) const;

  Json to_json() const;
  static ScaledParams from_json(const Json& j);
};

// Theorem-B parameter instantiations of the structure classes.
HStructure h1_params(const ScaledParams& p);   // (red, blue)
HStructure h2_params(const ScaledParams& p);   // (blue, red)
KStructure k_params(const ScaledParams& p);
KStarStructure kstar1_params(const ScaledParams& p);
KStarStructure kstar2_params(const ScaledParams& p);

struct StabilityOutcome {
  enum class Tag {
    RedMatching,
    BlueMatching,
    GreenOddMatching,
    DoubleH,
    K,
    KStar,
    Inconclusive,
  };
  Tag tag = Tag::Inconclusive;
  std::optional<ConnectedMatchingCertificate> matching;       // (i)-(iii)
  std::optional<std::pair<HStructure, HStructure>> double_h;  // (iv)
  std::optional<KStructure> k_structure;                      // (v)
  std::optional<KStarStructure> k_star;                       // (vi)
  std::vector<std::pair<std::string, std::string>> transcript;

  bool inconclusive() const { return tag == Tag::Inconclusive; }
  Json to_json() const;
};

const char* tag_name(StabilityOutcome::Tag t);

// Purification thresholds in units of sqrt(eta) k, mirroring the discard
// budgets of the proof's claims; `slack` multiplies every entry.
struct DiscardSchedule {
  long cross_major = 842;   // wrong colours against the major-matched block
  long cross_minor = 842;   // against the complementary block
  long inner_core = 1880;   // wrong colours inside the core
  long green_cross = 20;    // residual green between core and the rest
};

StabilityOutcome certify_stability(const ColouredGraph& g,
                                   const ScaledParams& params,
                                   const Rational& slack = rat(1),
                                   const DiscardSchedule& schedule = {});

struct OutcomeCheck {
  bool ok = false;
  std::vector<std::string> violations;
};

// Independent re-validation of an outcome against the graph and the
// Theorem-B thresholds, including the furthermore-clause windows.
OutcomeCheck verify_outcome(const ColouredGraph& g, const ScaledParams& params,
                            const StabilityOutcome& outcome);

}  // namespace ramsey

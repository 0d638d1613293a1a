#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcancel/center.hpp"
#include "qcancel/derivation.hpp"
#include "qcancel/discriminant.hpp"

namespace qcancel {

enum class Conclusion { StronglyCancellative, UniversallyCancellative, Cancellative, OpenCase, Unsupported };
std::string to_string(Conclusion c);

/// Why no cancellation verdict was reached.
enum class OpenReason { None, NoApplicableResult, ComputationUnsupported };
std::string to_string(OpenReason r);

struct Caveat {
  std::string id;
  std::string detail;
};

struct Citation {
  std::string rule;       // stable identifier of the implication used
  std::string statement;  // the implication, stated in formula form
  std::vector<Caveat> caveats;
  bool informational = false;
};

/// The rigidity equivalence chain for root-of-unity skew rings.  Each entry
/// is std::nullopt when it was not computed.
struct RigidityConditions {
  std::optional<bool> affine_automorphism_group;       // never computed
  std::optional<bool> discriminant_dominating;         // from the syntactic classifier
  std::optional<bool> center_in_proper_power_algebra;  // every coordinate gcd >= 2
  std::optional<bool> discriminant_effective;          // from the syntactic classifier
  std::optional<bool> every_generator_divides_discriminant;
  std::optional<bool> lnd_h_rigid;           // all T_s empty
  std::optional<bool> strongly_lnd_h_rigid;  // all T_s empty

  /// Name/value pairs in chain order.
  std::vector<std::pair<std::string, std::optional<bool>>> entries() const;
};

/// Evaluates the chain.  Throws UnsupportedError outside torsion skew rings
/// with n >= 2 noncommutative, and InternalError when two computed conditions
/// disagree.
RigidityConditions rigidity_conditions(const RingHandle& ring);

struct VerdictReport {
  RingHandle ring;
  std::optional<CenterDescription> center;
  std::vector<TSetResult> t_sets;
  std::optional<MLResult> ml;
  std::optional<DiscriminantResult> discriminant;
  std::optional<EffectivenessVerdict> effectiveness;
  std::optional<RigidityConditions> conditions;
  Conclusion conclusion = Conclusion::OpenCase;
  OpenReason open_reason = OpenReason::None;
  std::vector<Citation> citations;
  /// Sub-computations that were skipped, with the reason.
  std::vector<std::string> notes;
};

struct AnalyzeOptions {
  bool compute_discriminant = true;
};

VerdictReport analyze(const RingHandle& ring, AnalyzeOptions options = {});

}  // namespace qcancel

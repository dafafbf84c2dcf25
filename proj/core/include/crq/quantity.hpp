#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crq/rational.hpp"
#include "crq/trivalent.hpp"

namespace crq {

enum class ParamRole { probability, prevision };

/// Named assessment parameter (x = P(A|H), mu = prevision of an iterated
/// conditional, ...). Probability-role parameters are constrained to [0,1]
/// when instantiated.
struct Param {
  std::string name;
  ParamRole role = ParamRole::prevision;
};

/// Exact rational expression of degree <= 2 in named parameters. The only
/// nonlinearity kept is a product of two parameters, which is what the
/// iterated-conditional value tables need (terms like mu*(1-x)).
class AffineExpr {
 public:
  AffineExpr() = default;
  explicit AffineExpr(Rat constant) : constant_(std::move(constant)) {}

  static AffineExpr param(const std::string& name);
  static AffineExpr constant(const Rat& value) { return AffineExpr(value); }

  AffineExpr operator+(const AffineExpr& o) const;
  AffineExpr operator-(const AffineExpr& o) const;
  AffineExpr operator*(const Rat& k) const;

  /// Product of two expressions; throws if the result would exceed degree 2.
  static AffineExpr mul(const AffineExpr& a, const AffineExpr& b);

  /// Replaces a parameter by an expression (degree-checked).
  AffineExpr substitute(const std::string& name, const AffineExpr& repl) const;

  /// Evaluates with all parameters bound; throws UnboundParam.
  Rat evaluate(const std::map<std::string, Rat>& binding) const;

  /// Binds every parameter present in `binding` except `keep`; the result is
  /// an expression in at most the parameter `keep`.
  AffineExpr bind_except(const std::map<std::string, Rat>& binding,
                         const std::string& keep) const;

  /// True iff the expression is exactly the parameter `name`.
  bool is_param(const std::string& name) const;

  bool operator==(const AffineExpr& o) const;
  bool is_constant() const { return linear_.empty() && bilinear_.empty(); }
  const Rat& constant_term() const { return constant_; }

  std::vector<std::string> params() const;
  std::string to_string() const;

 private:
  Rat constant_ = 0;
  std::map<std::string, Rat> linear_;
  std::map<std::pair<std::string, std::string>, Rat> bilinear_;

  void add_linear(const std::string& p, const Rat& c);
  void add_bilinear(const std::string& p, const std::string& q, const Rat& c);
};

struct ConditionalRandomQuantity;
using CrqPtr = std::shared_ptr<const ConditionalRandomQuantity>;

/// A latent object that must be assessed alongside its owner: the
/// conjunction underlying an iterated conditional, priced at the product of
/// the named parameters (compound prevision theorem).
struct Companion {
  CrqPtr object;
  std::vector<std::string> product_params;
};

/// Conditional random quantity X|H in the numerical representation
/// X|H = XH + mu*(not H): an exact value expression on each piece of the
/// conditioning event, and the prevision parameter off it.
struct ConditionalRandomQuantity {
  std::string label;
  EventPtr conditioning;
  std::vector<std::pair<EventPtr, AffineExpr>> pieces; // partition of `conditioning`
  AffineExpr off_value;                                // value on not-conditioning
  Param prevision;
  std::vector<Companion> companions;

  PartitionedObject partitioned() const;
  std::vector<std::string> all_params() const;
};

/// Ordered family of conditional random quantities together with the bound
/// parameter values; the object coherence is tested on.
struct Assessment {
  std::vector<CrqPtr> family;
  std::map<std::string, Rat> values;
  std::vector<EventPtr> constraints;

  Assessment& assess(CrqPtr obj, const Rat& prevision_value);
  Assessment& bind(const std::string& param, const Rat& value);
};

/// Indicator of a conditional event, Eq-style AH + x*(not H). Degenerate
/// cases collapse: H subset of A gives the constant 1, impossible AH the
/// constant 0.
CrqPtr indicator(const ConditionalEvent& ce, const Param& x,
                 const std::vector<EventPtr>& constraints = {});

/// A general finite conditional quantity: explicit values on a partition of
/// the conditioning event.
CrqPtr discrete_quantity(const std::string& label, EventPtr conditioning,
                         std::vector<std::pair<EventPtr, AffineExpr>> pieces,
                         const Param& prevision,
                         const std::vector<EventPtr>& constraints = {});

/// Conjunction of two conditional events in the betting-scheme sense:
/// 1 if both true, 0 if either false, the other's probability if one void,
/// own prevision if both void.
CrqPtr conjoin_gs(const ConditionalEvent& a, const ConditionalEvent& b, const Param& x,
                  const Param& y, const Param& z,
                  const std::vector<EventPtr>& constraints = {});

/// De Morgan dual of conjoin_gs.
CrqPtr disjoin_gs(const ConditionalEvent& a, const ConditionalEvent& b, const Param& x,
                  const Param& y, const Param& w,
                  const std::vector<EventPtr>& constraints = {});

enum class StructuralIterKind { K, L, B, S, gs };

std::string to_string(StructuralIterKind k);

/// Iterated conditional built from the structure
///   consequent | antecedent = antecedent AND consequent + mu * (1 - antecedent),
/// with the compound-prevision substitution z = x*mu applied to the
/// underlying conjunction's prevision. The conjunction itself is attached as
/// a companion priced x*mu, so coherence checks see the full coupling.
/// The conjunction AH of the antecedent conditional must be possible.
CrqPtr iterate_structural(StructuralIterKind kind, const ConditionalEvent& antecedent,
                          const ConditionalEvent& consequent, const Param& x,
                          const Param& y, const Param& mu,
                          const std::vector<EventPtr>& constraints = {});

/// Instantiates the value table at bound parameters: one exact rational per
/// constituent of the object's own partition.
std::vector<std::pair<Constituent, Rat>> value_table(
    const ConditionalRandomQuantity& crq, const std::map<std::string, Rat>& binding,
    const std::vector<EventPtr>& constraints = {});

/// Symbolic per-constituent values (for table output and tests).
std::vector<std::pair<Constituent, AffineExpr>> symbolic_table(
    const ConditionalRandomQuantity& crq, const std::vector<EventPtr>& constraints = {});

/// Semantic equality of two quantities: identical value expressions on every
/// admissible world once both prevision parameters are renamed to a common
/// symbol. This is how "same conditional random quantity" is decided.
bool semantically_equal(const ConditionalRandomQuantity& a,
                        const ConditionalRandomQuantity& b,
                        const std::vector<EventPtr>& constraints = {});

}  // namespace crq

#pragma once

// Model-level witnesses for the degree-d self-cover z -> z^d of S^2:
// the induced isomorphism of component models, the evaluation-fibration
// exactness bookkeeping, and the classification of components.

#include "mapstab/cdga.hpp"
#include "mapstab/haefliger.hpp"
#include "mapstab/report.hpp"

#include <optional>
#include <vector>

namespace mapstab {

/// Automorphism of (A, d_A) induced by a self-map of the source.
struct CoverAction {
    long factor = 1;
    FiniteCdgaPtr source;
    std::vector<std::vector<Rational>> matrix;   // a_i -> sum_k matrix[i][k] a_k
    std::vector<std::vector<Rational>> inverse;  // matrix of the inverse automorphism

    [[nodiscard]] std::vector<Rational> apply(const std::vector<Rational>& coords) const;
};

/// a -> d a on a two-dimensional source {1, a}. d may be negative (the
/// orientation-reversing maps); d = 0 is rejected.
CoverAction cover_action(const FiniteCdgaPtr& source, long d);

/// Explicit automorphism for a general source. Throws UnsupportedSource
/// when the matrix is not an invertible CDGA automorphism.
CoverAction explicit_cover_action(const FiniteCdgaPtr& source, std::vector<std::vector<Rational>> matrix, long factor);

/// Multiplicative, unital, commutes with d_A, invertible.
VerificationReport verify_cover_action(const CoverAction& action);

/// first o second
CoverAction compose(const CoverAction& first, const CoverAction& second);

/// sigma_g(sigma_n(v)) = sigma_dn(v) on every target generator.
VerificationReport check_sigma_compatibility(const SectionData& section_n, const SectionData& section_dn,
                                             const CoverAction& action, const TargetModel& target);

/// h = sigma_g (x) 1 satisfies h d'_n = d'_dn h on every generator.
VerificationReport verify_intertwiner(const HaefligerModel& model_n, const HaefligerModel& model_dn,
                                      const CoverAction& action);

/// Unique morphism W_codomain <- W_domain with
/// (1 (x) phi) o eps_domain = (outer (x) 1) o eps_codomain o inner.
/// Chain-condition failure is a hard ConstructionFault.
CdgaMorphism induced_model_map(const HaefligerModel& domain, const HaefligerModel& codomain,
                               const std::vector<std::vector<Rational>>& outer, const TensorMorphism& inner);

struct ModelIsoPair {
    CdgaMorphism forward;   // W_n -> W_dn
    CdgaMorphism backward;  // W_dn -> W_n
};

/// h = sigma_g (x) 1 : (A (x) LV, d'_n) -> (A (x) LV, d'_dn). backward solves
/// (1 (x) phi21) eps_dn = (h|A (x) 1) eps_n h^{-1}; forward symmetrically.
ModelIsoPair induced_model_maps(const HaefligerModel& model_n, const HaefligerModel& model_dn,
                                const CoverAction& action);

/// Both maps are chain maps and both composites are the identity on generators.
VerificationReport verify_iso_pair(const CdgaMorphism& forward, const CdgaMorphism& backward);

/// Restriction of a model map to the based models (unit duals set to zero).
CdgaMorphism restrict_to_based(const CdgaMorphism& phi, const HaefligerModel& based_source,
                               const HaefligerModel& based_target);

struct LesDegree {
    int degree = 0;
    std::size_t target = 0;  // dim pi_k(X)
    std::size_t free = 0;    // dim pi_k(F)
    std::size_t based = 0;   // dim pi_k(F_*)
    std::size_t rank_evaluation = 0;  // V^k -> H^k(W) induced by v -> 1^* (x) v
    std::size_t rank_restriction = 0;  // H^k(W) -> H^k(W_based)
    bool middle_exact = false;
    bool connecting_consistent = false;
};

struct LesReport {
    Component component;
    int window = 0;
    HomotopyTable free{0};
    HomotopyTable based{0};
    HomotopyTable target{0};
    std::vector<LesDegree> degrees;
    bool exact = false;
};

/// Rank bookkeeping for the evaluation fibration F_* -> F -> X on the
/// linearized generator complexes. Throws Usage for window < 2.
LesReport les_report(const TargetPtr& target, const Component& n, const FiniteCdgaPtr& source, int window);

struct ConditionalBound {
    long kn = 0;
    long kdn = 0;
    long min_dim = 0;
};

struct StabilityCertificate {
    Component component{};
    Component scaled{};
    long factor = 1;
    int window = 0;
    VerificationReport sigma{};
    VerificationReport intertwiner{};
    ModelIsoPair free_iso;
    VerificationReport forward_chain{};
    VerificationReport backward_chain{};
    VerificationReport iso{};
    VerificationReport based_iso{};
    HomotopyTable free_n{0}, free_dn{0}, based_n{0}, based_dn{0}, target{0};
    LesReport les_n{}, les_dn{};
    bool based_tables_agree = false;
    bool degenerate = false;
    std::optional<ConditionalBound> conditional{};

    [[nodiscard]] bool valid() const;
};

StabilityCertificate stability_certificate(const TargetPtr& target, const FiniteCdgaPtr& source, const Component& n,
                                           long d, int window, std::optional<long> kn = std::nullopt,
                                           std::optional<long> kdn = std::nullopt);

struct ClassificationCell {
    std::vector<Component> members;
    HomotopyTable table{0};
    std::vector<std::size_t> cohomology;  // dim H^k of the component model, k = 1..window
};

struct Classification {
    std::vector<ClassificationCell> cells;
    bool distinguished = false;          // every two cells differ in table or cohomology
    std::optional<bool> two_type_bound;  // set for rank-one targets
};

/// Merges components only along an explicitly verified model isomorphism
/// through their common divisor; cells are then separated by homotopy
/// tables and cohomology dimensions where possible.
Classification classify_components(const TargetPtr& target, const FiniteCdgaPtr& source,
                                   const std::vector<Component>& components, int window);

}  // namespace mapstab

#pragma once

// Haefliger models of components of the section space of the trivial
// fibration Y x X -> Y, i.e. of components of the mapping space F(Y, X).
//
// Pipeline: twist (A (x) LV, d_A (x) d) by the section, solve for the unique
// differential delta on the free algebra over A^dual (x) V that makes
// epsilon(v) = sum_i a_i (x) (a_i^* (x) v) a chain map, then drop the
// generators of degree <= 0.

#include "mapstab/cdga.hpp"
#include "mapstab/finite_model.hpp"
#include "mapstab/report.hpp"
#include "mapstab/tensor.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace mapstab {

/// Minimal Sullivan model (LV, d) of a simply connected target.
struct TargetModel {
    Cdga cdga;
    std::vector<std::size_t> degree2_basis;  // generator indices x_1..x_r

    [[nodiscard]] const AlgebraPtr& algebra() const { return cdga.algebra; }
    [[nodiscard]] std::size_t rank() const { return degree2_basis.size(); }
};

using TargetPtr = std::shared_ptr<const TargetModel>;

/// Validates: generators of degree >= 2, no linear part in d, and
/// `degree2_basis` lists exactly the degree-2 generators. Throws
/// EngineError(InvalidTarget).
TargetPtr make_target(Cdga cdga, std::vector<std::size_t> degree2_basis);

/// Target model Lambda(x_2, y_{2m+1}), dy = x^{m+1}, of CP^m (m = 1 is S^2).
TargetPtr projective_space_target(int m, int max_degree);

using Component = std::vector<long>;

std::string to_string(const Component& n);

/// The morphism sigma: LV -> A induced by a section, by its values on generators.
struct SectionData {
    Component component;
    std::vector<std::vector<Rational>> images;  // A-coordinates per target generator

    /// x_i -> n_i a, every other generator -> 0, where a spans A^2.
    static SectionData from_component(const TargetModel& target, const FiniteCdga& source, const Component& n);
};

/// Degree preservation and sigma(d v) = d_A sigma(v) on every generator.
VerificationReport check_section(const SectionData& section, const TargetModel& target, const FiniteCdgaPtr& source);

/// sigma(p) in A-coordinates for p in LV.
std::vector<Rational> evaluate_section(const SectionData& section, const TargetModel& target,
                                       const FiniteCdgaPtr& source, const Element& p);

/// d' = psi^{-1} (d_A (x) d) psi with psi(v) = v - sigma(v). Throws
/// InvalidSection for an incompatible section.
TensorDerivation twist(const TargetModel& target, const SectionData& section, const FiniteCdgaPtr& source);

struct DualLabel {
    std::size_t basis_index = 0;       // i in a_i^*
    std::size_t target_generator = 0;  // v
};

struct HaefligerModel {
    enum class Stage { Full, Localized, Based };

    Cdga cdga;                     // (LW, delta)
    std::vector<DualLabel> labels;  // one per generator of cdga.algebra
    FiniteCdgaPtr source;
    TargetPtr target;
    SectionData section;
    TensorDerivation twisted;  // d' on A (x) LV
    Stage stage = Stage::Full;

    [[nodiscard]] const AlgebraPtr& algebra() const { return cdga.algebra; }
    [[nodiscard]] std::optional<std::size_t> generator_for(std::size_t basis_index, std::size_t target_generator) const;
    /// epsilon: A (x) LV -> A (x) LW, composed with the quotient that kills
    /// the generators this stage has dropped.
    [[nodiscard]] TensorMorphism epsilon() const;
};

/// Solves (d_A (x) delta) o epsilon = epsilon o d' generator by generator.
/// Throws SignConventionFault if the result fails delta^2 = 0 or the
/// epsilon chain-map recheck.
HaefligerModel solve_delta(const TensorDerivation& twisted, const FiniteCdgaPtr& source, const TargetPtr& target,
                           const SectionData& section);

/// Removes generators of degree <= 0 (set to zero in every delta image).
/// Throws NotLocalized when that is not a differential quotient.
HaefligerModel localize_component(const HaefligerModel& model);

/// Fiber of evaluation at the base point: drops the unit-dual generators
/// 1^* (x) v of a localized model.
HaefligerModel based_model(const HaefligerModel& model);

/// (d_A (x) delta)(epsilon v) - epsilon(d' v) for every target generator.
VerificationReport verify_epsilon_chain_map(const HaefligerModel& model);

/// twist -> solve_delta -> localize_component (-> based_model).
HaefligerModel component_model(const TargetPtr& target, const FiniteCdgaPtr& source, const Component& n,
                               bool based = false);

}  // namespace mapstab

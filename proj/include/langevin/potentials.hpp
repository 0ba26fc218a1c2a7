#pragma once

#include "langevin/continuity.hpp"
#include "langevin/random.hpp"
#include "langevin/vec.hpp"

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace langevin {

using ValueFn = std::function<double(std::span<const double>)>;
using GradFn = std::function<void(std::span<const double>, std::span<double>)>;
using Params = std::map<std::string, double>;

/// A potential U: R^d -> [0, inf) with a representative weak gradient and the constants
/// the error analysis needs: dissipativity <x, grad U(x)> >= m|x|^2 - b, a declared
/// modulus of continuity of grad U, |grad U(0)| and U0 = ||U||_{L^inf(B_1(0))}.
struct PotentialSpec {
    std::string name;
    int dim = 1;
    ValueFn value;
    GradFn weak_grad;
    double m = 1.0;
    double b = 0.0;
    ModulusSpec modulus = ModulusSpec::lipschitz(1.0);
    double grad_at_zero = 0.0;
    double u0 = 0.0;
    /// When set, `modulus` is only claimed on the ball of this radius.
    std::optional<double> modulus_radius;
    Params params;

    MNorm grad_mnorm() const { return {grad_at_zero, modulus.eval(1.0)}; }
    Vector grad(std::span<const double> x) const;
};

/// Builtins: quadratic, double_well(c, radius), hoelder_mix(alpha),
/// elastic_net_logistic(lambda1, lambda2, shift).
PotentialSpec builtin(const std::string& name, int dim, const Params& params = {});

std::vector<std::string> builtin_names();

struct Component {
    ValueFn value;
    GradFn grad;
};

/// U = sum_i U_i with |grad U_i(x) - grad U_i(y)| <= omega_hat(|x-y|) / N.
struct FiniteSumPotential {
    std::string name;
    int dim = 1;
    std::vector<Component> components;
    double m = 1.0;
    double b = 0.0;
    ModulusSpec component_modulus = ModulusSpec::lipschitz(1.0);  ///< omega_hat
    double grad_at_zero = 0.0;
    double u0 = 0.0;
    Params params;

    std::size_t size() const noexcept { return components.size(); }

    /// The summed potential as a PotentialSpec (modulus omega_hat).
    PotentialSpec aggregate() const;

    /// N identical components U_i = U / N.
    static FiniteSumPotential uniform_split(const PotentialSpec& p, std::size_t n);
};

/// Finite-sum builtins: shifted_hoelder_sum(alpha, components, spread, seed):
/// U_i(x) = (|x - c_i|^2/2 + sum_j |x_j - c_ij|^{1+alpha}/(1+alpha)) / N, c_i ~ N(0, spread^2 I).
FiniteSumPotential builtin_finite_sum(const std::string& name, int dim, const Params& params = {});

struct AssumptionCheck {
    std::string name;
    bool passed = true;
    double worst_margin = 0.0;  ///< min over samples of (lhs - rhs); negative means violated
    std::size_t samples = 0;
    std::string detail;
};

struct AssumptionReport {
    std::vector<AssumptionCheck> checks;
    bool all_passed() const;
    const AssumptionCheck* find(const std::string& name) const;
};

/// Spot-checks nonnegativity, dissipativity, U >= m/3|x|^2 - b/2 log 3, the declared
/// gradient modulus, |grad U(0)| and U0 on a radial log grid |x| in [1e-3, 1e2].
AssumptionReport check_assumptions(const PotentialSpec& p, std::size_t n_samples, Engine& rng);

/// Dissipativity of the sum and the per-component gradient modulus omega_hat / N.
AssumptionReport check_assumptions(const FiniteSumPotential& f, std::size_t n_samples,
                                   Engine& rng);

}  // namespace langevin

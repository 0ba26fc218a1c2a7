#pragma once

#include <utility>
#include <variant>
#include <vector>

namespace langevin {

/// omega(r) = M (r^alpha v r): Hoelder at small scales, linear beyond r = 1.
struct Hoelder {
    double M;
    double alpha;
};

struct Lipschitz {
    double K;
};

/// Piecewise-linear omega through (r, omega(r)) knots. Knots are sorted and
/// made nondecreasing at construction; the first value is used below the first
/// knot and the last segment is extrapolated beyond the last one.
struct TableLookup {
    std::vector<std::pair<double, double>> knots;
};

/// Modulus of continuity omega(r) = sup_{|x-y| <= r} |phi(x) - phi(y)|, declared by the user.
class ModulusSpec {
public:
    using Kind = std::variant<Hoelder, Lipschitz, TableLookup>;

    explicit ModulusSpec(Kind kind);

    static ModulusSpec hoelder(double M, double alpha) { return ModulusSpec{Hoelder{M, alpha}}; }
    static ModulusSpec lipschitz(double K) { return ModulusSpec{Lipschitz{K}}; }
    static ModulusSpec table(std::vector<std::pair<double, double>> knots) {
        return ModulusSpec{TableLookup{std::move(knots)}};
    }

    const Kind& kind() const noexcept { return kind_; }

    /// omega(r) for r > 0.
    double eval(double r) const;

private:
    Kind kind_;
};

/// ||phi||_M = |phi(0)| + omega_phi(1).
struct MNorm {
    double grad_at_zero = 0.0;
    double omega_one = 0.0;

    double value() const noexcept { return grad_at_zero + omega_one; }
};

/// Upper bound on |phi(x)| from |phi(0)| + omega(1) + omega(1)|x|.
double linear_growth_bound(const MNorm& n, double x_norm);

/// Lipschitz constant bound (d+4) omega(r) / r for grad(phi * rho_r).
double convolved_grad_lipschitz(const ModulusSpec& m, int dim, double r);

/// sup_x |phi * rho_r (x) - phi(x)| <= omega(r).
double sup_deviation_bound(const ModulusSpec& m, double r);

/// |Phi(x) - Phi(y)| <= (|grad Phi(0)| + omega(1)(1 + (|x|+|y|)/2)) |x - y|
/// for Phi whose weak gradient has M-norm `n`.
double local_lipschitz_bound(const MNorm& n, double x_norm, double y_norm, double dist);

/// Phi(x) <= omega(1)/2 |x|^2 + (|grad Phi(0)| + c omega(1)) |x| + ||Phi||_{L^inf(B_1)},
/// with c = 3/2 for Phi itself and c = 5/2 for its mollification (r <= 1).
double quadratic_growth_bound(const MNorm& n, double x_norm, double sup_on_unit_ball,
                              bool mollified);

}  // namespace langevin

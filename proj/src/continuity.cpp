#include "langevin/continuity.hpp"

#include "langevin/errors.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

namespace langevin {

namespace {

void validate(Hoelder& h) {
    if (!(h.M > 0.0) || !std::isfinite(h.M)) throw InputError("Hoelder modulus: M must be positive");
    if (!(h.alpha > 0.0) || !(h.alpha <= 1.0))
        throw InputError("Hoelder modulus: alpha must lie in (0, 1]");
}

void validate(Lipschitz& l) {
    if (!(l.K > 0.0) || !std::isfinite(l.K)) throw InputError("Lipschitz modulus: K must be positive");
}

void validate(TableLookup& t) {
    auto& k = t.knots;
    if (k.empty()) throw InputError("table modulus: at least one knot required");
    for (const auto& [r, w] : k) {
        if (!(r >= 0.0) || !std::isfinite(r) || !(w >= 0.0) || !std::isfinite(w))
            throw InputError("table modulus: knots must be finite and nonnegative");
    }
    std::sort(k.begin(), k.end());
    for (std::size_t i = 1; i < k.size(); ++i) {
        if (k[i].first == k[i - 1].first)
            throw InputError("table modulus: duplicate radius in knots");
        k[i].second = std::max(k[i].second, k[i - 1].second);
    }
}

double eval_table(const TableLookup& t, double r) {
    const auto& k = t.knots;
    if (k.size() == 1 || r <= k.front().first) return k.front().second;
    auto it = std::upper_bound(k.begin(), k.end(), r,
                               [](double v, const auto& knot) { return v < knot.first; });
    if (it == k.end()) it = k.end() - 1;
    const auto& [r1, w1] = *it;
    const auto& [r0, w0] = *(it - 1);
    return w0 + (w1 - w0) * (r - r0) / (r1 - r0);
}

void require_unit_radius(double r, const char* what) {
    if (!(r > 0.0) || !(r <= 1.0)) throw InputError(std::string(what) + ": r must lie in (0, 1]");
}

}  // namespace

ModulusSpec::ModulusSpec(Kind kind) : kind_(std::move(kind)) {
    std::visit([](auto& k) { validate(k); }, kind_);
}

double ModulusSpec::eval(double r) const {
    if (!(r > 0.0)) throw InputError("modulus eval: r must be positive");
    return std::visit(
        [r](const auto& k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, Hoelder>)
                return k.M * std::max(std::pow(r, k.alpha), r);
            else if constexpr (std::is_same_v<T, Lipschitz>)
                return k.K * r;
            else
                return eval_table(k, r);
        },
        kind_);
}

double linear_growth_bound(const MNorm& n, double x_norm) {
    if (!(x_norm >= 0.0)) throw InputError("linear_growth_bound: |x| must be nonnegative");
    return n.grad_at_zero + n.omega_one + n.omega_one * x_norm;
}

double convolved_grad_lipschitz(const ModulusSpec& m, int dim, double r) {
    require_unit_radius(r, "convolved_grad_lipschitz");
    if (dim < 1) throw InputError("convolved_grad_lipschitz: dimension must be >= 1");
    return (dim + 4.0) * m.eval(r) / r;
}

double sup_deviation_bound(const ModulusSpec& m, double r) {
    require_unit_radius(r, "sup_deviation_bound");
    return m.eval(r);
}

double local_lipschitz_bound(const MNorm& n, double x_norm, double y_norm, double dist) {
    return (n.grad_at_zero + n.omega_one * (1.0 + 0.5 * (x_norm + y_norm))) * dist;
}

double quadratic_growth_bound(const MNorm& n, double x_norm, double sup_on_unit_ball,
                              bool mollified) {
    const double c = mollified ? 2.5 : 1.5;
    return 0.5 * n.omega_one * x_norm * x_norm + (n.grad_at_zero + c * n.omega_one) * x_norm +
           sup_on_unit_ball;
}

}  // namespace langevin

#include "langevin/metrics.hpp"

#include "langevin/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace langevin {

namespace {

void check_pair(const SampleSet& a, const SampleSet& b) {
    if (a.dim != b.dim) throw InputError("sample sets differ in dimension");
    if (a.size() != b.size()) throw InputError("sample sets differ in size");
    if (a.size() == 0) throw InputError("empty sample set");
}

double sorted_w2(std::vector<double> x, std::vector<double> y) {
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
    return s / static_cast<double>(x.size());
}

struct Accum {
    double sum = 0, sum_sq = 0;
    std::size_t n = 0;
    void add(double v) {
        sum += v;
        sum_sq += v * v;
        ++n;
    }
    double mean() const { return sum / static_cast<double>(n); }
    double se() const {
        if (n < 2) return 0;
        double m = mean();
        double var = (sum_sq - n * m * m) / static_cast<double>(n - 1);
        return std::sqrt(std::max(0.0, var) / static_cast<double>(n));
    }
};

/// Batch-means standard error of the mean of a serially correlated series.
double batch_se(std::span<const double> v) {
    const std::size_t n = v.size();
    const std::size_t batches = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(n))));
    const std::size_t len = n / batches;
    if (batches < 2 || len == 0) return 0;
    Accum acc;
    for (std::size_t b = 0; b < batches; ++b) {
        double s = 0;
        for (std::size_t i = b * len; i < (b + 1) * len; ++i) s += v[i];
        acc.add(s / static_cast<double>(len));
    }
    return acc.se();
}

}  // namespace

SampleSet::SampleSet(int d, std::vector<double> pts) : dim(d), points(std::move(pts)) {
    if (dim < 1) throw InputError("dimension must be >= 1");
    if (points.size() % static_cast<std::size_t>(dim) != 0) throw InputError("ragged sample matrix");
    if (!all_finite(points)) throw InputError("samples must be finite");
}

SampleSet SampleSet::from_trace(const Trace& t, std::size_t burn_in) {
    if (burn_in >= t.size()) throw InputError("burn-in exceeds recorded length");
    const auto d = static_cast<std::size_t>(t.dim);
    return SampleSet(t.dim, std::vector<double>(t.data.begin() + static_cast<std::ptrdiff_t>(burn_in * d), t.data.end()));
}

std::vector<std::size_t> solve_assignment(std::span<const double> cost, std::size_t n) {
    if (cost.size() != n * n) throw InputError("cost matrix must be n x n");
    // shortest augmenting path with row/column potentials, 1-based internally
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0), v(n + 1, 0);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = p[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<std::size_t> col(n);
    for (std::size_t j = 1; j <= n; ++j) col[p[j] - 1] = j - 1;
    return col;
}

double w2_exact(const SampleSet& a, const SampleSet& b) {
    check_pair(a, b);
    const std::size_t n = a.size();
    if (n > kMaxExactSize) throw InputError("exact W2 limited to 512 points");
    std::vector<double> cost(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        auto x = a.point(i);
        for (std::size_t j = 0; j < n; ++j) {
            auto y = b.point(j);
            double s = 0;
            for (std::size_t k = 0; k < x.size(); ++k) s += (x[k] - y[k]) * (x[k] - y[k]);
            cost[i * n + j] = s;
        }
    }
    auto col = solve_assignment(cost, n);
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) total += cost[i * n + col[i]];
    return std::sqrt(total / static_cast<double>(n));
}

double w2_1d(const SampleSet& a, const SampleSet& b) {
    check_pair(a, b);
    if (a.dim != 1) throw InputError("w2_1d needs one-dimensional samples");
    return std::sqrt(sorted_w2(a.points, b.points));
}

double w2_sliced(const SampleSet& a, const SampleSet& b, std::size_t n_proj, Engine& rng) {
    check_pair(a, b);
    if (n_proj < 1) throw InputError("need at least one projection");
    const std::size_t n = a.size();
    Vector dir(static_cast<std::size_t>(a.dim));
    std::vector<double> x(n), y(n);
    double total = 0;
    for (std::size_t p = 0; p < n_proj; ++p) {
        uniform_direction(rng, dir);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = dot(a.point(i), dir);
            y[i] = dot(b.point(i), dir);
        }
        total += sorted_w2(x, y);
    }
    return std::sqrt(total / static_cast<double>(n_proj));
}

double default_exp_alpha(double beta, double m) {
    if (!(beta > 0) || !(m > 0)) throw InputError("beta and m must be positive");
    return std::min(1.0, beta * m / 4);
}

MomentReport moment_report(const Trace& t, double m, std::optional<std::size_t> burn_in) {
    if (t.size() == 0) throw InputError("empty trace");
    const std::size_t start = burn_in.value_or(t.size() / 2);
    if (start >= t.size()) throw InputError("burn-in exceeds recorded length");
    const auto d = static_cast<std::size_t>(t.dim);
    const std::size_t n = t.size() - start;

    MomentReport rep;
    rep.n = n;
    rep.exp_alpha = default_exp_alpha(t.config.beta, m);
    rep.mean.assign(d, 0);
    rep.mean_se.assign(d, 0);
    std::vector<double> sq(n), ex(n), coord(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto y = t.point(start + i);
        sq[i] = norm2(y);
        ex[i] = std::exp(rep.exp_alpha * sq[i]);
        rep.max_norm = std::max(rep.max_norm, std::sqrt(sq[i]));
    }
    for (std::size_t k = 0; k < d; ++k) {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i) s += coord[i] = t.point(start + i)[k];
        rep.mean[k] = s / static_cast<double>(n);
        rep.mean_se[k] = batch_se(coord);
    }
    double s2 = 0, se = 0;
    for (std::size_t i = 0; i < n; ++i) {
        s2 += sq[i];
        se += ex[i];
    }
    rep.second_moment = s2 / static_cast<double>(n);
    rep.second_moment_se = batch_se(sq);
    rep.exp_moment = se / static_cast<double>(n);
    rep.exp_moment_se = batch_se(ex);
    return rep;
}

MomentReport moment_report(const SampleSet& s, double exp_alpha) {
    if (s.size() == 0) throw InputError("empty sample set");
    const auto d = static_cast<std::size_t>(s.dim);
    MomentReport rep;
    rep.n = s.size();
    rep.exp_alpha = exp_alpha;
    std::vector<Accum> coords(d);
    Accum sq, ex;
    for (std::size_t i = 0; i < rep.n; ++i) {
        auto y = s.point(i);
        for (std::size_t k = 0; k < d; ++k) coords[k].add(y[k]);
        double r2 = norm2(y);
        sq.add(r2);
        ex.add(std::exp(exp_alpha * r2));
        rep.max_norm = std::max(rep.max_norm, std::sqrt(r2));
    }
    for (auto& c : coords) {
        rep.mean.push_back(c.mean());
        rep.mean_se.push_back(c.se());
    }
    rep.second_moment = sq.mean();
    rep.second_moment_se = sq.se();
    rep.exp_moment = ex.mean();
    rep.exp_moment_se = ex.se();
    return rep;
}

}  // namespace langevin

#include "langevin/samplers.hpp"

#include "langevin/errors.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

namespace langevin {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_radius_batch(double r, std::size_t n_batch) {
    if (!(r > 0.0 && r <= 1.0)) throw InputError("smoothing radius must lie in (0, 1]");
    if (n_batch < 1) throw InputError("n_batch must be >= 1");
}

}  // namespace

void validate(const ChainConfig& cfg) {
    if (!(cfg.beta > 0.0) || !std::isfinite(cfg.beta)) throw InputError("beta must be positive");
    if (!(cfg.eta > 0.0) || !std::isfinite(cfg.eta)) throw InputError("eta must be positive");
    if (cfg.stride < 1) throw InputError("stride must be >= 1");
    if (auto* g = std::get_if<GaussianInit>(&cfg.init)) {
        if (!(g->scale > 0.0) || !std::isfinite(g->scale))
            throw InputError("gaussian init scale must be positive");
    } else if (auto* p = std::get_if<PointInit>(&cfg.init)) {
        if (!all_finite(p->x0)) throw InputError("init point must be finite");
    } else if (!std::get<CustomInit>(cfg.init).draw) {
        throw InputError("custom init needs a draw function");
    }
}

GradientOracle::GradientOracle(Kind kind) : kind_(std::move(kind)) {
    std::visit(overloaded{
                   [](const ExactGradient& e) {
                       if (!e.potential.weak_grad) throw InputError("potential has no gradient");
                   },
                   [this](const SphericalSmoothed& s) {
                       check_radius_batch(s.radius, s.n_batch);
                       if (!s.potential.weak_grad) throw InputError("potential has no gradient");
                       unit_kernel_.emplace(s.potential.dim, 1.0);
                   },
                   [this](const FiniteSumSpherical& f) {
                       check_radius_batch(f.radius, f.n_batch);
                       if (f.potential.components.empty())
                           throw InputError("finite-sum potential has no components");
                       unit_kernel_.emplace(f.potential.dim, 1.0);
                   },
                   [](const CustomGradient& c) {
                       if (c.dim < 1 || !c.eval) throw InputError("custom oracle needs dim and eval");
                       const Delta& d = c.delta;
                       if (!(d.bias0 >= 0 && d.bias2 >= 0 && d.var0 >= 0 && d.var2 >= 0))
                           throw InputError("delta components must be nonnegative");
                   },
               },
               kind_);
}

int GradientOracle::dim() const noexcept {
    return std::visit(overloaded{
                          [](const ExactGradient& e) { return e.potential.dim; },
                          [](const SphericalSmoothed& s) { return s.potential.dim; },
                          [](const FiniteSumSpherical& f) { return f.potential.dim; },
                          [](const CustomGradient& c) { return c.dim; },
                      },
                      kind_);
}

std::string GradientOracle::label() const {
    return std::visit(overloaded{
                          [](const ExactGradient&) { return std::string("exact"); },
                          [](const SphericalSmoothed&) { return std::string("smoothed"); },
                          [](const FiniteSumSpherical&) { return std::string("finite_sum"); },
                          [](const CustomGradient& c) { return c.label; },
                      },
                      kind_);
}

bool GradientOracle::is_stochastic() const noexcept {
    return !std::holds_alternative<ExactGradient>(kind_);
}

std::optional<double> GradientOracle::radius() const noexcept {
    if (auto* s = std::get_if<SphericalSmoothed>(&kind_)) return s->radius;
    if (auto* f = std::get_if<FiniteSumSpherical>(&kind_)) return f->radius;
    return std::nullopt;
}

Delta GradientOracle::delta(double r) const {
    if (!(r > 0.0 && r <= 1.0)) throw InputError("bound radius must lie in (0, 1]");
    auto same_radius = [r](double own) {
        if (std::abs(own - r) > 1e-12 * own)
            throw PreconditionError("smoothed oracle delta is only known at its own radius");
    };
    return std::visit(overloaded{
                          [r](const ExactGradient& e) {
                              double w = e.potential.modulus.eval(r);
                              return Delta{0.5 * w * w, 0.0, 0.0, 0.0};
                          },
                          [&](const SphericalSmoothed& s) {
                              same_radius(s.radius);
                              double w = s.potential.modulus.eval(r);
                              return Delta{0.0, 0.0, w * w / (2.0 * static_cast<double>(s.n_batch)), 0.0};
                          },
                          [&](const FiniteSumSpherical& f) {
                              same_radius(f.radius);
                              double w = f.potential.component_modulus.eval(r);
                              return Delta{0.0, 0.0, w * w / (2.0 * static_cast<double>(f.n_batch)), 0.0};
                          },
                          [](const CustomGradient& c) { return c.delta; },
                      },
                      kind_);
}

void GradientOracle::evaluate(std::span<const double> x, SmoothingStreams& streams,
                              std::span<double> out) const {
    const auto d = static_cast<std::size_t>(dim());
    if (x.size() != d || out.size() != d) throw InputError("gradient oracle: dimension mismatch");
    thread_local Vector shifted, zeta, g;
    std::visit(overloaded{
                   [&](const ExactGradient& e) { e.potential.weak_grad(x, out); },
                   [&](const SphericalSmoothed& s) {
                       shifted.resize(d);
                       zeta.resize(d);
                       g.resize(d);
                       std::fill(out.begin(), out.end(), 0.0);
                       for (std::size_t j = 0; j < s.n_batch; ++j) {
                           unit_kernel_->sample(streams.zeta, zeta);
                           for (std::size_t i = 0; i < d; ++i) shifted[i] = x[i] + s.radius * zeta[i];
                           s.potential.weak_grad(shifted, g);
                           for (std::size_t i = 0; i < d; ++i) out[i] += g[i];
                       }
                       const double w = 1.0 / static_cast<double>(s.n_batch);
                       for (auto& v : out) v *= w;
                   },
                   [&](const FiniteSumSpherical& f) {
                       shifted.resize(d);
                       zeta.resize(d);
                       g.resize(d);
                       std::fill(out.begin(), out.end(), 0.0);
                       const std::size_t n = f.potential.size();
                       std::uniform_int_distribution<std::size_t> pick(0, n - 1);
                       for (std::size_t j = 0; j < f.n_batch; ++j) {
                           unit_kernel_->sample(streams.zeta, zeta);
                           const std::size_t c = pick(streams.lambda);
                           for (std::size_t i = 0; i < d; ++i) shifted[i] = x[i] + f.radius * zeta[i];
                           f.potential.components[c].grad(shifted, g);
                           for (std::size_t i = 0; i < d; ++i) out[i] += g[i];
                       }
                       const double w = static_cast<double>(n) / static_cast<double>(f.n_batch);
                       for (auto& v : out) v *= w;
                   },
                   [&](const CustomGradient& c) { c.eval(x, streams, out); },
               },
               kind_);
}

Vector ss_gradient(const GradientOracle& o, std::span<const double> x, SmoothingStreams& streams) {
    if (!o.radius()) throw InputError("ss_gradient needs a smoothed oracle");
    if (!all_finite(x)) throw InputError("ss_gradient: non-finite point");
    Vector out(static_cast<std::size_t>(o.dim()));
    o.evaluate(x, streams, out);
    return out;
}

ChainDivergence::ChainDivergence(std::size_t step, Trace partial)
    : std::runtime_error("chain diverged at step " + std::to_string(step)),
      step_(step),
      partial_(std::move(partial)) {}

void step(std::span<const double> y, std::span<const double> g, const ChainConfig& cfg,
          Engine& rng, std::span<double> out) {
    if (y.size() != g.size() || y.size() != out.size()) throw InputError("step: dimension mismatch");
    const double noise = std::sqrt(2.0 * cfg.eta / cfg.beta);
    std::normal_distribution<double> n01;
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] - cfg.eta * g[i] + noise * n01(rng);
}

Vector step(std::span<const double> y, std::span<const double> g, const ChainConfig& cfg,
            Engine& rng) {
    Vector out(y.size());
    step(y, g, cfg, rng, out);
    return out;
}

void draw_initial(const InitLaw& init, Engine& rng, std::span<double> out) {
    std::visit(overloaded{
                   [&](const GaussianInit& g) {
                       fill_gaussian(rng, out);
                       for (auto& v : out) v *= g.scale;
                   },
                   [&](const PointInit& p) {
                       if (p.x0.size() != out.size()) throw InputError("init point: dimension mismatch");
                       std::copy(p.x0.begin(), p.x0.end(), out.begin());
                   },
                   [&](const CustomInit& c) { c.draw(rng, out); },
               },
               init);
}

Trace run(const GradientOracle& oracle, const ChainConfig& cfg) {
    validate(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    const int dim = oracle.dim();
    const auto d = static_cast<std::size_t>(dim);

    Trace tr;
    tr.dim = dim;
    tr.config = cfg;
    const std::size_t expected = cfg.steps / cfg.stride + 2;
    tr.steps.reserve(expected);
    tr.data.reserve(expected * d);

    auto record = [&](std::size_t k, const Vector& y) {
        tr.steps.push_back(k);
        tr.data.insert(tr.data.end(), y.begin(), y.end());
    };
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    Engine init_rng = make_engine(cfg.seed, Stream::init);
    Engine brownian = make_engine(cfg.seed, Stream::brownian);
    SmoothingStreams streams = SmoothingStreams::for_chain(cfg.seed);

    Vector y(d), g(d), next(d);
    draw_initial(cfg.init, init_rng, y);
    if (!all_finite(y)) throw InputError("initial point is not finite");
    record(0, y);

    for (std::size_t k = 1; k <= cfg.steps; ++k) {
        oracle.evaluate(y, streams, g);
        step(y, g, cfg, brownian, next);
        std::swap(y, next);
        if (!all_finite(y) || norm(y) > kDivergenceRadius) {
            tr.diverged = true;
            tr.divergence_step = k;
            tr.elapsed_seconds = elapsed();
            throw ChainDivergence(k, std::move(tr));
        }
        if (k % cfg.stride == 0 || k == cfg.steps) record(k, y);
    }
    tr.elapsed_seconds = elapsed();
    return tr;
}

std::vector<Trace> run_replicas(const GradientOracle& oracle, const ChainConfig& cfg,
                                std::size_t replicas, std::size_t threads) {
    validate(cfg);
    std::vector<Trace> out(replicas);
    if (replicas == 0) return out;
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, replicas);

    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    auto worker = [&](std::size_t w) {
        try {
            for (std::size_t i = next++; i < replicas; i = next++) {
                ChainConfig c = cfg;
                c.seed = replica_seed(cfg.seed, i);
                try {
                    out[i] = run(oracle, c);
                } catch (const ChainDivergence& e) {
                    out[i] = e.partial();
                }
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(worker, w);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace langevin

// SPDX-License-Identifier: Apache-2.0
#include "nomalab/sim.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "nomalab/errors.hpp"
#include "nomalab/rng.hpp"

namespace nomalab {

std::string to_string(ChannelKind kind) {
    return kind == ChannelKind::siso_rayleigh ? "siso_rayleigh"
                                              : "mimo_rayleigh";
}

std::string to_string(Decoder dec) {
    switch (dec) {
        case Decoder::single_user: return "single_user";
        case Decoder::sic: return "sic";
        default: return "sic_genie";
    }
}

void ChannelConfig::validate() const {
    if (snr_db.empty()) throw ConfigError("snr_db: empty SNR list");
    for (size_t i = 1; i < snr_db.size(); ++i)
        if (snr_db[i] <= snr_db[i - 1])
            throw ConfigError("snr_db: list must be strictly increasing");
    if (snr_gap_db < 0.0) throw ConfigError("snr_gap_db: must be >= 0");
    if (kind == ChannelKind::mimo_rayleigh && (mt != 2 || mr != 2))
        throw ConfigError("mt/mr: only the 2x2 configuration is supported");
}

long detect_composite(const CompositeScheme& scheme, const double* y,
                      const double* h, double sqrt_p) {
    const long k = scheme.size();
    const int n = scheme.dim();
    const double* pts = scheme.points.data();
    double g[32];
    for (int l = 0; l < n; ++l) g[l] = sqrt_p * h[l];
    long best = 0;
    double best_metric = std::numeric_limits<double>::infinity();
    for (long i = 0; i < k; ++i) {
        const double* x = pts + i * n;
        double metric = 0.0;
        for (int l = 0; l < n; ++l) {
            const double d = y[l] - g[l] * x[l];
            metric += d * d;
        }
        if (metric < best_metric) {
            best_metric = metric;
            best = i;
        }
    }
    return best;
}

long detect_single_user(const CompositeScheme& scheme, const double* y,
                        const double* h, double sqrt_p, int user) {
    const long idx = detect_composite(scheme, y, h, sqrt_p);
    const auto [l1, l2] = scheme.labels(idx);
    return user == 1 ? l1 : l2;
}

namespace {

// nearest point of one user's scaled constellation after cancellation
long detect_user1_alone(const CompositeScheme& scheme, const double* y,
                        const double* g) {
    const long k = scheme.user1.size();
    const int n = scheme.dim();
    const double* pts = scheme.user1.points.data();
    const double w = scheme.user1_scale;
    long best = 0;
    double best_metric = std::numeric_limits<double>::infinity();
    for (long i = 0; i < k; ++i) {
        const double* x = pts + i * n;
        double metric = 0.0;
        for (int l = 0; l < n; ++l) {
            const double d = y[l] - g[l] * w * x[l];
            metric += d * d;
        }
        if (metric < best_metric) {
            best_metric = metric;
            best = i;
        }
    }
    return best;
}

}  // namespace

std::pair<long, long> detect_sic(const CompositeScheme& scheme, const double* y,
                                 const double* h, double sqrt_p, bool genie,
                                 long true_label2) {
    const int n = scheme.dim();
    const long l2 = genie ? true_label2
                          : detect_single_user(scheme, y, h, sqrt_p, 2);
    double g[32], yc[32];
    const double* x2 = scheme.user2.points.data() + l2 * n;
    const double w2 = scheme.user2_scale;
    for (int l = 0; l < n; ++l) {
        g[l] = sqrt_p * h[l];
        yc[l] = y[l] - g[l] * w2 * x2[l];
    }
    return {detect_user1_alone(scheme, yc, g), l2};
}

std::vector<std::complex<double>> complex_points(const CompositeScheme& scheme,
                                                 double tau,
                                                 bool unit_complex_power) {
    if (scheme.dim() != 2)
        throw UnsupportedDimensionError(
            "complex mapping requires a 2-D scheme");
    const double scale =
        tau * (unit_complex_power ? 1.0 / std::numbers::sqrt2 : 1.0);
    std::vector<std::complex<double>> q(scheme.size());
    for (long i = 0; i < scheme.size(); ++i)
        q[i] = scale * std::complex<double>(scheme.points(i, 0),
                                            scheme.points(i, 1));
    return q;
}

Eigen::Matrix2cd alamouti_encode(std::complex<double> s1,
                                 std::complex<double> s2) {
    Eigen::Matrix2cd x;
    x << s1, -std::conj(s2), s2, std::conj(s1);
    return x;
}

AlamoutiCombined alamouti_combine(const Eigen::Matrix2cd& y,
                                  const Eigen::Matrix2cd& h) {
    AlamoutiCombined c;
    c.s_hat[0] = {0.0, 0.0};
    c.s_hat[1] = {0.0, 0.0};
    for (int j = 0; j < 2; ++j) {
        c.s_hat[0] += std::conj(h(j, 0)) * y(j, 0) + h(j, 1) * std::conj(y(j, 1));
        c.s_hat[1] += std::conj(h(j, 1)) * y(j, 0) - h(j, 0) * std::conj(y(j, 1));
    }
    c.channel_gain = h.squaredNorm();
    return c;
}

namespace {

struct Counts {
    uint64_t err[2] = {0, 0};
    uint64_t symbols = 0;
};

// chunked deterministic trial runner: results depend only on (seed, trials),
// never on the worker count; early stop is quantized to batch boundaries so
// it is deterministic too
template <typename Kernel>
Counts run_point(uint64_t trials, int threads, uint64_t stop_errors,
                 const Kernel& kernel) {
    constexpr uint64_t kChunk = 8192;
    constexpr uint64_t kBatchChunks = 8;
    const uint64_t nchunks = (trials + kChunk - 1) / kChunk;
    Counts total;
    for (uint64_t b0 = 0; b0 < nchunks; b0 += kBatchChunks) {
        const uint64_t bend = std::min(b0 + kBatchChunks, nchunks);
        std::vector<Counts> part(bend - b0);
        auto run_chunk = [&](uint64_t ci) {
            const uint64_t t0 = ci * kChunk;
            const uint64_t t1 = std::min(t0 + kChunk, trials);
            Counts c;
            for (uint64_t t = t0; t < t1; ++t) kernel(t, c);
            part[ci - b0] = c;
        };
        const int workers =
            std::min<int>(threads, int(bend - b0));
        if (workers <= 1) {
            for (uint64_t ci = b0; ci < bend; ++ci) run_chunk(ci);
        } else {
            std::atomic<uint64_t> next{b0};
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (int w = 0; w < workers; ++w)
                pool.emplace_back([&] {
                    for (uint64_t ci = next.fetch_add(1); ci < bend;
                         ci = next.fetch_add(1))
                        run_chunk(ci);
                });
            for (auto& th : pool) th.join();
        }
        for (const auto& c : part) {
            total.err[0] += c.err[0];
            total.err[1] += c.err[1];
            total.symbols += c.symbols;
        }
        if (stop_errors > 0 && total.err[0] >= stop_errors &&
            total.err[1] >= stop_errors)
            break;
    }
    return total;
}

void siso_trial(const CompositeScheme& scheme, Decoder decoder, double sqrt_p,
                uint64_t seed, uint32_t lane, uint64_t t, Counts& c) {
    const int n = scheme.dim();
    const long k1 = scheme.user1.size(), k2 = scheme.user2.size();
    StreamRng rng(seed, t, lane);
    const long l1 = long(rng.below(k1));
    const long l2 = long(rng.below(k2));
    const double* x = scheme.points.data() + scheme.index_of(l1, l2) * n;

    double h[32], y[32];
    // user 1 observation
    for (int l = 0; l < n; ++l) h[l] = rng.rayleigh_unit();
    for (int l = 0; l < n; ++l) y[l] = sqrt_p * h[l] * x[l] + rng.gaussian();
    long l1_hat;
    if (decoder == Decoder::single_user)
        l1_hat = detect_single_user(scheme, y, h, sqrt_p, 1);
    else
        l1_hat = detect_sic(scheme, y, h, sqrt_p,
                            decoder == Decoder::sic_genie, l2)
                     .first;
    // user 2 observation
    for (int l = 0; l < n; ++l) h[l] = rng.rayleigh_unit();
    for (int l = 0; l < n; ++l) y[l] = sqrt_p * h[l] * x[l] + rng.gaussian();
    const long l2_hat = detect_single_user(scheme, y, h, sqrt_p, 2);

    c.err[0] += l1_hat != l1;
    c.err[1] += l2_hat != l2;
    c.symbols += 1;
}

struct MimoContext {
    std::vector<std::complex<double>> q;    // composite complex alphabet
    std::vector<std::complex<double>> q1;   // user 1 residual alphabet
    std::vector<std::complex<double>> q2c;  // user 2 component per label
    double sigma2 = 1.0;                    // user-2 fade amplitude scale
};

long nearest(const std::vector<std::complex<double>>& pts,
             std::complex<double> target, double gain) {
    long best = 0;
    double best_metric = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < pts.size(); ++i) {
        const double metric = std::norm(target - gain * pts[i]);
        if (metric < best_metric) {
            best_metric = metric;
            best = long(i);
        }
    }
    return best;
}

void mimo_trial(const CompositeScheme& scheme, const MimoContext& ctx,
                Decoder decoder, double sqrt_p, uint64_t seed, uint32_t lane,
                uint64_t t, Counts& c) {
    const long k1 = scheme.user1.size(), k2 = scheme.user2.size();
    StreamRng rng(seed, t, lane);
    const long la1 = long(rng.below(k1)), la2 = long(rng.below(k2));
    const long lb1 = long(rng.below(k1)), lb2 = long(rng.below(k2));
    const Eigen::Matrix2cd x = alamouti_encode(
        ctx.q[scheme.index_of(la1, la2)], ctx.q[scheme.index_of(lb1, lb2)]);

    Eigen::Matrix2cd h1, z1, h2, z2;
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i) h1(j, i) = rng.cgaussian();
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i) z1(j, i) = rng.cgaussian();
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i) h2(j, i) = ctx.sigma2 * rng.cgaussian();
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i) z2(j, i) = rng.cgaussian();

    const long truth1[2] = {la1, lb1}, truth2[2] = {la2, lb2};

    // user 1 receiver
    {
        const Eigen::Matrix2cd y = sqrt_p * h1 * x + z1;
        const AlamoutiCombined comb = alamouti_combine(y, h1);
        const double gain = sqrt_p * comb.channel_gain;
        for (int s = 0; s < 2; ++s) {
            long l1_hat;
            if (decoder == Decoder::single_user) {
                l1_hat = scheme.labels(nearest(ctx.q, comb.s_hat[s], gain)).first;
            } else {
                const long l2 =
                    decoder == Decoder::sic_genie
                        ? truth2[s]
                        : scheme.labels(nearest(ctx.q, comb.s_hat[s], gain))
                              .second;
                const std::complex<double> cleaned =
                    comb.s_hat[s] - gain * ctx.q2c[l2];
                l1_hat = nearest(ctx.q1, cleaned, gain);
            }
            c.err[0] += l1_hat != truth1[s];
        }
    }
    // user 2 receiver
    {
        const Eigen::Matrix2cd y = sqrt_p * h2 * x + z2;
        const AlamoutiCombined comb = alamouti_combine(y, h2);
        const double gain = sqrt_p * comb.channel_gain;
        for (int s = 0; s < 2; ++s) {
            const long l2_hat =
                scheme.labels(nearest(ctx.q, comb.s_hat[s], gain)).second;
            c.err[1] += l2_hat != truth2[s];
        }
    }
    c.symbols += 2;
}

}  // namespace

SerCurve simulate_ser(const CompositeScheme& scheme, const ChannelConfig& chan,
                      const SimOptions& opts) {
    chan.validate();
    if (opts.trials < 10000 && opts.trials_per_point.empty())
        throw ConfigError("trials: at least 10^4 trials per point required");
    if (!opts.trials_per_point.empty()) {
        if (opts.trials_per_point.size() != chan.snr_db.size())
            throw ConfigError(
                "trials_per_point: length must match the SNR list");
        for (uint64_t tp : opts.trials_per_point)
            if (tp < 10000)
                throw ConfigError(
                    "trials_per_point: at least 10^4 trials per point");
    }
    const int n = scheme.dim();
    if (n > 32) throw UnsupportedDimensionError("scheme dimension above 32");

    int threads = opts.threads;
    if (threads <= 0) threads = int(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;

    MimoContext ctx;
    if (chan.kind == ChannelKind::mimo_rayleigh) {
        ctx.q = complex_points(scheme, opts.tau, opts.unit_complex_power);
        const double scale =
            opts.tau * (opts.unit_complex_power ? 1.0 / std::numbers::sqrt2
                                                : 1.0);
        ctx.q1.resize(scheme.user1.size());
        for (long i = 0; i < scheme.user1.size(); ++i)
            ctx.q1[i] = scale * scheme.user1_scale *
                        std::complex<double>(scheme.user1.points(i, 0),
                                             scheme.user1.points(i, 1));
        ctx.q2c.resize(scheme.user2.size());
        for (long i = 0; i < scheme.user2.size(); ++i)
            ctx.q2c[i] = scale * scheme.user2_scale *
                         std::complex<double>(scheme.user2.points(i, 0),
                                              scheme.user2.points(i, 1));
        ctx.sigma2 = std::pow(10.0, -chan.snr_gap_db / 20.0);
    }

    SerCurve curve;
    curve.decoder = opts.decoder;
    curve.channel = chan.kind;
    curve.seed = opts.seed;
    curve.scheme = scheme.descriptor();
    curve.rng_name = kRngName;

    for (size_t q = 0; q < chan.snr_db.size(); ++q) {
        const double snr_lin = std::pow(10.0, chan.snr_db[q] / 10.0);
        const double p = chan.kind == ChannelKind::siso_rayleigh
                             ? snr_lin / n
                             : snr_lin / (chan.mt * chan.mr);
        const double sqrt_p = std::sqrt(p);
        const uint64_t trials = opts.trials_per_point.empty()
                                    ? opts.trials
                                    : opts.trials_per_point[q];
        Counts counts;
        if (chan.kind == ChannelKind::siso_rayleigh) {
            counts = run_point(trials, threads, opts.early_stop_errors,
                               [&](uint64_t t, Counts& c) {
                                   siso_trial(scheme, opts.decoder, sqrt_p,
                                              opts.seed, uint32_t(q), t, c);
                               });
        } else {
            counts = run_point(trials, threads, opts.early_stop_errors,
                               [&](uint64_t t, Counts& c) {
                                   mimo_trial(scheme, ctx, opts.decoder,
                                              sqrt_p, opts.seed, uint32_t(q),
                                              t, c);
                               });
        }
        for (int u = 0; u < 2; ++u) {
            SerPoint pt;
            pt.snr_db = chan.snr_db[q];
            pt.trials = counts.symbols;
            pt.errors = counts.err[u];
            pt.ser = counts.symbols > 0
                         ? double(pt.errors) / double(pt.trials)
                         : 0.0;
            curve.user[u].push_back(pt);
        }
    }
    return curve;
}

double estimate_diversity(const std::vector<SerPoint>& points, double lo_db,
                          double hi_db) {
    std::vector<std::pair<double, double>> xy;
    for (const auto& pt : points) {
        if (pt.snr_db < lo_db - 1e-9 || pt.snr_db > hi_db + 1e-9) continue;
        if (pt.ser <= 0.0)
            throw InsufficientDataError(
                "zero SER inside the slope window; add trials");
        xy.emplace_back(-pt.snr_db / 10.0, std::log10(pt.ser));
    }
    if (xy.size() < 3)
        throw InsufficientDataError(
            "need at least 3 SNR points inside the slope window");
    double mx = 0.0, my = 0.0;
    for (auto [x, y] : xy) {
        mx += x;
        my += y;
    }
    mx /= double(xy.size());
    my /= double(xy.size());
    double sxx = 0.0, sxy = 0.0;
    for (auto [x, y] : xy) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    return sxy / sxx;
}

}  // namespace nomalab

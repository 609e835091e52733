// Copyright 2026 The cveao Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cveao/channel.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include "cveao/errors.hpp"
#include "cveao/symplectic.hpp"

namespace cveao {

// Syndrome ------------------------------------------------------------------

template <Scalar T>
std::vector<T> Syndrome<T>::flat() const {
    std::vector<T> out = a;
    out.insert(out.end(), a1.begin(), a1.end());
    out.insert(out.end(), a2.begin(), a2.end());
    return out;
}

template <Scalar T>
std::vector<T> Syndrome<T>::in_row_order(const Code<T> &code) const {
    std::vector<T> out;
    std::size_t ia = 0, i1 = 0, i2 = 0;
    for (const auto &row : code.checks) {
        switch (row.kind) {
            case RowKind::ancilla:
                out.push_back(a.at(ia++));
                break;
            case RowKind::ebit_z:
                out.push_back(a1.at(i1++));
                break;
            case RowKind::ebit_x:
                out.push_back(a2.at(i2++));
                break;
        }
    }
    return out;
}

template <Scalar T>
bool Syndrome<T>::is_zero(double tol) const {
    for (const T &v : flat()) {
        if (!cveao::is_zero(v, tol)) {
            return false;
        }
    }
    return true;
}

template <Scalar T>
std::string Syndrome<T>::to_string() const {
    std::string out;
    auto group = [&out](const std::vector<T> &g) {
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (i) {
                out += ' ';
            }
            out += format_scalar(g[i]);
        }
    };
    group(a);
    out += " | ";
    group(a1);
    out += " | ";
    group(a2);
    return out;
}

template <Scalar T>
void DecoderConfig<T>::check(const CodeParams &params) const {
    const std::size_t cols = params.l + 2 * params.c;
    for (const Matrix<T> *m : {&alpha, &beta}) {
        bool empty = m->rows() == 0 && m->cols() == 0;
        if (!empty && (m->rows() != params.k || m->cols() != cols)) {
            throw InputError("decoder matrix is " + m->shape() + ", expected " + std::to_string(params.k) + "x" +
                             std::to_string(cols));
        }
    }
}

template <Scalar T>
std::pair<std::vector<T>, std::vector<T>> DecoderConfig<T>::predict(const Syndrome<T> &s, std::size_t k) const {
    std::vector<T> flat = s.flat();
    auto apply = [&](const Matrix<T> &m) {
        std::vector<T> out(k, T(0));
        if (m.rows() == 0) {
            return out;
        }
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < flat.size(); ++j) {
                out[i] += m(i, j) * flat[j];
            }
        }
        return out;
    };
    return {apply(alpha), apply(beta)};
}

template <Scalar T>
Syndrome<T> extract_syndrome(const Code<T> &code, const PhaseVector<T> &e) {
    if (e.modes() != code.params.n) {
        throw InputError("error vector has " + std::to_string(e.modes()) + " modes, code has " +
                         std::to_string(code.params.n));
    }
    Syndrome<T> s;
    for (const auto &row : code.checks) {
        T v = syndrome_pairing(row.alice, e);
        switch (row.kind) {
            case RowKind::ancilla:
                s.a.push_back(std::move(v));
                break;
            case RowKind::ebit_z:
                s.a1.push_back(std::move(v));
                break;
            case RowKind::ebit_x:
                s.a2.push_back(std::move(v));
                break;
        }
    }
    return s;
}

template <Scalar T>
PhaseVector<T> canonical_recovery(const Syndrome<T> &syndrome, const DecoderConfig<T> &cfg,
                                  const CodeParams &params) {
    cfg.check(params);
    if (syndrome.a.size() != params.l || syndrome.a1.size() != params.c || syndrome.a2.size() != params.c) {
        throw InputError("syndrome shape does not match " + to_string(params));
    }
    auto [alpha, beta] = cfg.predict(syndrome, params.k);
    PhaseVector<T> u(params.n);
    const std::size_t anc = params.k;
    const std::size_t ebit = params.k + params.l + params.r;
    for (std::size_t i = 0; i < params.k; ++i) {
        u.p(i) = alpha[i];
        u.x(i) = beta[i];
    }
    for (std::size_t i = 0; i < params.l; ++i) {
        u.x(anc + i) = syndrome.a[i];
    }
    for (std::size_t i = 0; i < params.c; ++i) {
        u.p(ebit + i) = syndrome.a2[i];
        u.x(ebit + i) = syndrome.a1[i];
    }
    return u;
}

// Decoder -------------------------------------------------------------------

template <Scalar T>
Decoder<T>::Decoder(const Code<T> &code, DecoderConfig<T> cfg, double tol)
    : code_(code), cfg_(std::move(cfg)), basis_(build_symplectic_basis(code, tol)) {
    cfg_.check(code.params);
    const std::size_t l = code.params.l;
    const std::size_t c = code.params.c;
    std::vector<std::size_t> slot(code.checks.size());
    std::size_t ia = 0, i1 = 0, i2 = 0;
    for (std::size_t r = 0; r < code.checks.size(); ++r) {
        switch (code.checks[r].kind) {
            case RowKind::ancilla:
                slot[r] = ia++;
                break;
            case RowKind::ebit_z:
                slot[r] = l + i1++;
                break;
            case RowKind::ebit_x:
                slot[r] = l + c + i2++;
                break;
        }
    }
    // An observable pair (u, v) with <u, v> = 1 acts on errors as the pair
    // (Q u, -Q v); the syndrome of u is the coordinate along -Q v.
    for (std::size_t i = 0; i < basis_.stabilizers.size(); ++i) {
        destab_dirs_.push_back(-displacement_image(basis_.destabilizers[i]));
        stab_dirs_.push_back(displacement_image(basis_.stabilizers[i]));
    }
    for (std::size_t j = 0; j < basis_.ebit_pairs.size(); ++j) {
        const auto &[first, second] = basis_.ebit_pairs[j];
        ebit_first_dirs_.push_back(-displacement_image(second));
        ebit_second_dirs_.push_back(displacement_image(first) * basis_.ebit_second_scale[j]);
        ebit_first_slot_.push_back(slot[basis_.ebit_rows[j].first]);
        ebit_second_slot_.push_back(slot[basis_.ebit_rows[j].second]);
    }
    for (const auto &[u, v] : basis_.logical_pairs) {
        logical_dirs_.emplace_back(displacement_image(u), -displacement_image(v));
    }
    for (const auto &[u, v] : basis_.gauge_pairs) {
        gauge_dirs_.emplace_back(displacement_image(u), -displacement_image(v));
    }
}

template <Scalar T>
PhaseVector<T> Decoder<T>::recover(const Syndrome<T> &syndrome) const {
    const CodeParams &p = code_.params;
    if (syndrome.a.size() != p.l || syndrome.a1.size() != p.c || syndrome.a2.size() != p.c) {
        throw InputError("syndrome shape does not match " + to_string(p));
    }
    const std::vector<T> flat = syndrome.flat();
    PhaseVector<T> r(p.n);
    for (std::size_t i = 0; i < destab_dirs_.size(); ++i) {
        r.add_scaled(flat[i], destab_dirs_[i]);
    }
    for (std::size_t j = 0; j < ebit_first_dirs_.size(); ++j) {
        r.add_scaled(flat[ebit_first_slot_[j]], ebit_first_dirs_[j]);
        r.add_scaled(flat[ebit_second_slot_[j]], ebit_second_dirs_[j]);
    }
    auto [alpha, beta] = cfg_.predict(syndrome, p.k);
    for (std::size_t i = 0; i < logical_dirs_.size(); ++i) {
        r.add_scaled(alpha[i], logical_dirs_[i].first);
        r.add_scaled(beta[i], logical_dirs_[i].second);
    }
    return r;
}

template <Scalar T>
std::vector<std::pair<T, T>> Decoder<T>::residual_logical(const PhaseVector<T> &net) const {
    if (net.modes() != code_.params.n) {
        throw InputError("error vector has " + std::to_string(net.modes()) + " modes, code has " +
                         std::to_string(code_.params.n));
    }
    std::vector<std::pair<T, T>> out;
    for (const auto &[u, w] : logical_dirs_) {
        out.emplace_back(symplectic_product(net, w), symplectic_product(u, net));
    }
    return out;
}

template <Scalar T>
Decoder<T> Decoder<T>::with_config(DecoderConfig<T> cfg) const {
    cfg.check(code_.params);
    Decoder out = *this;
    out.cfg_ = std::move(cfg);
    return out;
}

namespace {

template <Scalar T>
T dot(const std::vector<T> &a, const std::vector<T> &b) {
    T acc(0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

/// Columns as a matrix, plus the left inverse (E^T E)^{-1} E^T.
template <Scalar T>
std::pair<Matrix<T>, Matrix<T>> with_left_inverse(const std::vector<std::vector<T>> &cols, std::size_t rows,
                                                  double tol) {
    Matrix<T> e(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        for (std::size_t r = 0; r < rows; ++r) {
            e(r, c) = cols[c][r];
        }
    }
    if (cols.empty()) {
        return {e, Matrix<T>(0, rows)};
    }
    Matrix<T> et = e.transpose();
    return {e, inverse(et * e, tol) * et};
}

template <Scalar T>
std::vector<T> mat_vec(const Matrix<T> &m, const std::vector<T> &v) {
    std::vector<T> out(m.rows(), T(0));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out[r] += m(r, c) * v[c];
        }
    }
    return out;
}

template <Scalar T>
bool all_zero(const std::vector<T> &v, double tol) {
    for (const T &x : v) {
        if (!is_zero(x, tol)) {
            return false;
        }
    }
    return true;
}

}  // namespace

template <Scalar T>
DecoderConfig<T> single_mode_config(const Decoder<T> &decoder, std::size_t mode, double tol) {
    const CodeParams &p = decoder.code().params;
    if (mode >= p.n) {
        throw InputError("mode " + std::to_string(mode + 1) + " out of range");
    }
    const std::size_t m = p.l + 2 * p.c;
    std::vector<std::vector<T>> cols;
    std::vector<std::vector<std::pair<T, T>>> logicals;
    for (const auto &w : {PhaseVector<T>::unit_p(p.n, mode), PhaseVector<T>::unit_x(p.n, mode)}) {
        std::vector<T> syn = extract_syndrome(decoder.code(), w).flat();
        auto logical = decoder.residual_logical(w);
        // Keep the column if it is independent of those kept so far;
        // otherwise its logical content must follow from theirs.
        auto [e, pinv] = with_left_inverse(cols, m, tol);
        std::vector<T> coef = mat_vec(pinv, syn);
        std::vector<T> resid = syn;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            for (std::size_t r = 0; r < m; ++r) {
                resid[r] -= coef[c] * cols[c][r];
            }
        }
        if (!all_zero(resid, tol)) {
            cols.push_back(std::move(syn));
            logicals.push_back(std::move(logical));
            continue;
        }
        for (std::size_t i = 0; i < p.k; ++i) {
            T lp = logical[i].first;
            T lx = logical[i].second;
            for (std::size_t c = 0; c < cols.size(); ++c) {
                lp -= coef[c] * logicals[c][i].first;
                lx -= coef[c] * logicals[c][i].second;
            }
            if (!is_zero(lp, tol) || !is_zero(lx, tol)) {
                throw InputError("errors on mode " + std::to_string(mode + 1) + " are not correctable");
            }
        }
    }
    auto [e, pinv] = with_left_inverse(cols, m, tol);
    DecoderConfig<T> cfg = DecoderConfig<T>::zero(p);
    for (std::size_t i = 0; i < p.k; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t c = 0; c < cols.size(); ++c) {
                cfg.alpha(i, j) += logicals[c][i].first * pinv(c, j);
                cfg.beta(i, j) += logicals[c][i].second * pinv(c, j);
            }
        }
    }
    return cfg;
}

template <Scalar T>
SingleModeDecoder<T>::SingleModeDecoder(const Code<T> &code, double tol)
    : tol_(tol), base_(code, DecoderConfig<T>::zero(code.params), tol) {
    const std::size_t n = code.params.n;
    const std::size_t m = code.params.l + 2 * code.params.c;
    for (std::size_t mode = 0; mode < n; ++mode) {
        DecoderConfig<T> cfg;
        try {
            cfg = single_mode_config(base_, mode, tol);
        } catch (const InputError &) {
            continue;
        }
        std::vector<std::vector<T>> cols;
        for (const auto &w : {PhaseVector<T>::unit_p(n, mode), PhaseVector<T>::unit_x(n, mode)}) {
            std::vector<T> syn = extract_syndrome(code, w).flat();
            auto [e, pinv] = with_left_inverse(cols, m, tol);
            std::vector<T> coef = mat_vec(pinv, syn);
            std::vector<T> resid = syn;
            for (std::size_t c = 0; c < cols.size(); ++c) {
                for (std::size_t r = 0; r < m; ++r) {
                    resid[r] -= coef[c] * cols[c][r];
                }
            }
            if (!all_zero(resid, tol)) {
                cols.push_back(std::move(syn));
            }
        }
        auto [e, pinv] = with_left_inverse(cols, m, tol);
        modes_.push_back(mode);
        per_mode_.push_back(base_.with_config(std::move(cfg)));
        fits_.push_back({std::move(e), std::move(pinv)});
    }
}

template <Scalar T>
std::size_t SingleModeDecoder<T>::pick(const Syndrome<T> &syndrome) const {
    const std::vector<T> s = syndrome.flat();
    std::optional<std::size_t> best;
    double best_resid = 0.0;
    for (std::size_t i = 0; i < fits_.size(); ++i) {
        std::vector<T> fit = mat_vec(fits_[i].images, mat_vec(fits_[i].pinv, s));
        double resid = 0.0;
        for (std::size_t r = 0; r < s.size(); ++r) {
            double d = to_double(T(s[r] - fit[r]));
            resid += d * d;
        }
        resid = std::sqrt(resid);
        if (!best || resid < best_resid - tol_) {
            best = i;
            best_resid = resid;
        }
    }
    return best ? *best : fits_.size();
}

template <Scalar T>
PhaseVector<T> SingleModeDecoder<T>::recover(const Syndrome<T> &syndrome) const {
    std::size_t i = pick(syndrome);
    return i < per_mode_.size() ? per_mode_[i].recover(syndrome) : base_.recover(syndrome);
}

template <Scalar T>
PhaseVector<T> decode(const Code<T> &code, const Syndrome<T> &syndrome, const DecoderConfig<T> &cfg, double tol) {
    return Decoder<T>(code, cfg, tol).recover(syndrome);
}

template <Scalar T>
std::vector<std::pair<T, T>> residual_logical(const Code<T> &code, const PhaseVector<T> &net, double tol) {
    return Decoder<T>(code, {}, tol).residual_logical(net);
}

// Monte Carlo ---------------------------------------------------------------

double SqueezingModel::variance() const {
    if (!db) {
        return 0.0;
    }
    return std::pow(10.0, -*db / 10.0) / 2.0;
}

void check_noise(const NoiseModel &noise, const CodeParams &params) {
    std::visit(
        [&](const auto &model) {
            using M = std::decay_t<decltype(model)>;
            if constexpr (std::is_same_v<M, GaussianNoise>) {
                if (!(model.sigma > 0.0) || !std::isfinite(model.sigma)) {
                    throw InputError("gaussian noise needs sigma > 0");
                }
            } else if constexpr (std::is_same_v<M, StructuredS0Noise>) {
                if (!(model.sigma > 0.0) || !std::isfinite(model.sigma)) {
                    throw InputError("s0 noise needs sigma > 0");
                }
                model.cfg.check(params);
            } else if constexpr (std::is_same_v<M, SingleModeNoise>) {
                if (model.mode >= params.n) {
                    throw InputError("single-mode noise on mode " + std::to_string(model.mode + 1) + " of " +
                                     std::to_string(params.n));
                }
                if (!std::isfinite(model.p) || !std::isfinite(model.x)) {
                    throw InputError("single-mode noise needs finite p and x");
                }
            } else {
                if (model.e.modes() != params.n) {
                    throw InputError("fixed error has " + std::to_string(model.e.modes()) + " modes, code has " +
                                     std::to_string(params.n));
                }
            }
        },
        noise);
}

PhaseVector<double> sample_error(const Decoder<double> &decoder, const NoiseModel &noise, SplitMix64 &rng) {
    const CodeParams &params = decoder.code().params;
    return std::visit(
        [&](const auto &model) -> PhaseVector<double> {
            using M = std::decay_t<decltype(model)>;
            if constexpr (std::is_same_v<M, GaussianNoise>) {
                std::normal_distribution<double> dist(0.0, model.sigma);
                PhaseVector<double> e(params.n);
                for (std::size_t i = 0; i < e.size(); ++i) {
                    e[i] = dist(rng);
                }
                return e;
            } else if constexpr (std::is_same_v<M, StructuredS0Noise>) {
                std::normal_distribution<double> dist(0.0, model.sigma);
                Syndrome<double> s;
                for (std::size_t i = 0; i < params.l; ++i) {
                    s.a.push_back(dist(rng));
                }
                for (std::size_t i = 0; i < params.c; ++i) {
                    s.a1.push_back(dist(rng));
                }
                for (std::size_t i = 0; i < params.c; ++i) {
                    s.a2.push_back(dist(rng));
                }
                // Recovery with the noise model's own alpha/beta is an element
                // of the error set; absorbed and gauge parts are added on top.
                auto [alpha, beta] = model.cfg.predict(s, params.k);
                PhaseVector<double> e = decoder.recover(s);
                auto [dalpha, dbeta] = decoder.config().predict(s, params.k);
                const auto &basis = decoder.basis();
                for (std::size_t i = 0; i < params.k; ++i) {
                    const auto &[u, v] = basis.logical_pairs[i];
                    e.add_scaled(alpha[i] - dalpha[i], displacement_image(u));
                    e.add_scaled(beta[i] - dbeta[i], -displacement_image(v));
                }
                for (const auto &dir : decoder.stabilizer_directions()) {
                    e.add_scaled(dist(rng), dir);
                }
                for (const auto &[g1, g2] : decoder.gauge_directions()) {
                    e.add_scaled(dist(rng), g1);
                    e.add_scaled(dist(rng), g2);
                }
                return e;
            } else if constexpr (std::is_same_v<M, SingleModeNoise>) {
                PhaseVector<double> e(params.n);
                e.p(model.mode) = model.p;
                e.x(model.mode) = model.x;
                return e;
            } else {
                return model.e;
            }
        },
        noise);
}

namespace {

constexpr std::size_t kChunk = 1024;

struct Partial {
    std::vector<double> p2;
    std::vector<double> x2;
    double norm_sum = 0.0;
    std::size_t within_1e9 = 0;
    std::size_t within_1e2 = 0;
};

Partial run_chunk(const Decoder<double> &decoder, const SingleModeDecoder<double> *single, const NoiseModel &noise,
                  const SqueezingModel &squeezing, std::size_t begin, std::size_t end, std::uint64_t seed) {
    const std::size_t k = decoder.code().params.k;
    Partial part{std::vector<double>(k, 0.0), std::vector<double>(k, 0.0)};
    const double sq_sigma = std::sqrt(squeezing.variance());
    for (std::size_t t = begin; t < end; ++t) {
        SplitMix64 rng = trial_stream(seed, t);
        PhaseVector<double> e = sample_error(decoder, noise, rng);
        Syndrome<double> s = extract_syndrome(decoder.code(), e);
        if (squeezing.db) {
            std::normal_distribution<double> dist(0.0, sq_sigma);
            for (auto *group : {&s.a, &s.a1, &s.a2}) {
                for (double &v : *group) {
                    v += dist(rng);
                }
            }
        }
        PhaseVector<double> net = e - (single ? single->recover(s) : decoder.recover(s));
        double norm2 = 0.0;
        auto logical = decoder.residual_logical(net);
        for (std::size_t i = 0; i < k; ++i) {
            double p = logical[i].first;
            double x = logical[i].second;
            part.p2[i] += p * p;
            part.x2[i] += x * x;
            norm2 += p * p + x * x;
        }
        double norm = std::sqrt(norm2);
        part.norm_sum += norm;
        part.within_1e9 += norm <= 1e-9;
        part.within_1e2 += norm <= 1e-2;
    }
    return part;
}

std::size_t thread_count(std::size_t requested, std::size_t chunks) {
    std::size_t n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("CVEAO_THREADS")) {
        std::size_t cap = 0;
        auto [ptr, ec] = std::from_chars(env, env + std::char_traits<char>::length(env), cap);
        if (ec == std::errc() && cap > 0) {
            n = std::min(n, cap);
        }
    }
    return std::max<std::size_t>(1, std::min(n, chunks));
}

}  // namespace

TrialStats run_trials(const Code<double> &code, const NoiseModel &noise, const DecoderConfig<double> &cfg,
                      const SqueezingModel &squeezing, std::size_t trials, std::uint64_t seed,
                      const RunOptions &options) {
    if (trials == 0) {
        throw InputError("trials must be at least 1");
    }
    if (squeezing.db && (!(*squeezing.db >= 0.0) || std::isnan(*squeezing.db))) {
        throw InputError("squeezing must be a nonnegative number of dB");
    }
    check_noise(noise, code.params);
    const Decoder<double> decoder(code, cfg, options.tol);
    std::optional<SingleModeDecoder<double>> single;
    if (options.decoder == DecoderKind::single_mode) {
        single.emplace(code, options.tol);
    }
    const SingleModeDecoder<double> *single_ptr = single ? &*single : nullptr;

    const std::size_t chunks = (trials + kChunk - 1) / kChunk;
    std::vector<Partial> parts(chunks);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t c = next++; c < chunks; c = next++) {
            parts[c] = run_chunk(decoder, single_ptr, noise, squeezing, c * kChunk, std::min(trials, (c + 1) * kChunk), seed);
        }
    };
    const std::size_t n_threads = thread_count(options.threads, chunks);
    std::vector<std::thread> pool;
    for (std::size_t i = 1; i < n_threads; ++i) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &t : pool) {
        t.join();
    }

    const std::size_t k = code.params.k;
    Partial total{std::vector<double>(k, 0.0), std::vector<double>(k, 0.0)};
    for (const Partial &p : parts) {
        for (std::size_t i = 0; i < k; ++i) {
            total.p2[i] += p.p2[i];
            total.x2[i] += p.x2[i];
        }
        total.norm_sum += p.norm_sum;
        total.within_1e9 += p.within_1e9;
        total.within_1e2 += p.within_1e2;
    }
    TrialStats stats;
    stats.trials = trials;
    const double n = static_cast<double>(trials);
    double p_all = 0.0;
    double x_all = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        stats.rms_logical_p_per_mode.push_back(std::sqrt(total.p2[i] / n));
        stats.rms_logical_x_per_mode.push_back(std::sqrt(total.x2[i] / n));
        p_all += total.p2[i];
        x_all += total.x2[i];
    }
    if (k > 0) {
        stats.rms_logical_p = std::sqrt(p_all / (n * static_cast<double>(k)));
        stats.rms_logical_x = std::sqrt(x_all / (n * static_cast<double>(k)));
    }
    stats.mean_residual_norm = total.norm_sum / n;
    stats.frac_within_1e9 = static_cast<double>(total.within_1e9) / n;
    stats.frac_within_1e2 = static_cast<double>(total.within_1e2) / n;
    return stats;
}

// CSV -----------------------------------------------------------------------

namespace {

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') {
            out += '"';
        }
        out += ch;
    }
    return out + "\"";
}

}  // namespace

std::string format_csv_row(const CsvRecord &r) {
    std::string out;
    out += csv_field(r.code) + ',';
    out += csv_field(r.noise) + ',';
    out += (r.sigma ? format_scalar(*r.sigma) : std::string()) + ',';
    out += (r.squeezing.db ? format_scalar(*r.squeezing.db) : std::string("inf")) + ',';
    out += std::to_string(r.stats.trials) + ',';
    out += std::to_string(r.seed) + ',';
    out += format_scalar(r.stats.rms_logical_p) + ',';
    out += format_scalar(r.stats.rms_logical_x) + ',';
    out += format_scalar(r.stats.mean_residual_norm) + ',';
    out += format_scalar(r.stats.frac_within_1e9) + ',';
    out += format_scalar(r.stats.frac_within_1e2);
    return out;
}

void append_csv(const std::string &path, const CsvRecord &record) {
    std::error_code ec;
    bool fresh = !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
    std::ofstream out(path, std::ios::app);
    if (!out) {
        throw InputError("cannot open '" + path + "' for appending");
    }
    if (fresh) {
        out << kCsvHeader << '\n';
    }
    out << format_csv_row(record) << '\n';
}

#define CVEAO_INSTANTIATE(T)                                                                                \
    template struct Syndrome<T>;                                                                            \
    template struct DecoderConfig<T>;                                                                       \
    template class Decoder<T>;                                                                              \
    template class SingleModeDecoder<T>;                                                                    \
    template DecoderConfig<T> single_mode_config<T>(const Decoder<T> &, std::size_t, double);              \
    template Syndrome<T> extract_syndrome<T>(const Code<T> &, const PhaseVector<T> &);                      \
    template PhaseVector<T> canonical_recovery<T>(const Syndrome<T> &, const DecoderConfig<T> &,            \
                                                  const CodeParams &);                                      \
    template PhaseVector<T> decode<T>(const Code<T> &, const Syndrome<T> &, const DecoderConfig<T> &, double); \
    template std::vector<std::pair<T, T>> residual_logical<T>(const Code<T> &, const PhaseVector<T> &, double);

CVEAO_INSTANTIATE(Rational)
CVEAO_INSTANTIATE(double)

#undef CVEAO_INSTANTIATE

}  // namespace cveao

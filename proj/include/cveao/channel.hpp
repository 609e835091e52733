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


#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cveao/code.hpp"
#include "cveao/matrix.hpp"
#include "cveao/phase_vector.hpp"
#include "cveao/rng.hpp"
#include "cveao/scalar.hpp"

namespace cveao {

/// Measured shifts of the check observables, grouped by row kind. Each group
/// keeps the order of its rows in F.
template <Scalar T>
struct Syndrome {
    std::vector<T> a;   // ancilla rows
    std::vector<T> a1;  // ebit_z rows (relative position)
    std::vector<T> a2;  // ebit_x rows (total momentum)

    /// (a, a1, a2) concatenated.
    std::vector<T> flat() const;
    /// One entry per F row, in F order.
    std::vector<T> in_row_order(const Code<T> &code) const;
    bool is_zero(double tol) const;
    /// "a... | a1... | a2..."
    std::string to_string() const;

    friend bool operator==(const Syndrome &, const Syndrome &) = default;
};

/// Linear models of the logical displacement accompanying a syndrome:
/// p-kick = alpha (a, a1, a2), x-shift = beta (a, a1, a2). Both k x (l + 2c).
/// Empty matrices mean zero.
template <Scalar T>
struct DecoderConfig {
    Matrix<T> alpha;
    Matrix<T> beta;

    static DecoderConfig zero(const CodeParams &params) {
        std::size_t cols = params.l + 2 * params.c;
        return {Matrix<T>(params.k, cols), Matrix<T>(params.k, cols)};
    }
    /// Throws InputError unless both matrices are empty or k x (l + 2c).
    void check(const CodeParams &params) const;
    /// alpha s (first) and beta s (second); zeros when empty.
    std::pair<std::vector<T>, std::vector<T>> predict(const Syndrome<T> &s, std::size_t k) const;
};

template <Scalar T>
Syndrome<T> extract_syndrome(const Code<T> &code, const PhaseVector<T> &e);

/// The fixed recovery of the canonical code, modes ordered (information,
/// ancilla, gauge, ebit): (alpha, 0, 0, a2 | beta, a, 0, a1).
template <Scalar T>
PhaseVector<T> canonical_recovery(const Syndrome<T> &syndrome, const DecoderConfig<T> &cfg,
                                  const CodeParams &params);

/// Recovery for an arbitrary valid code, built from its adapted symplectic
/// basis. The syndrome fixes the destabilizer and ebit-pair coordinates of an
/// error; the recovery cancels exactly those plus the cfg-predicted logical
/// part. Construct once and reuse: construction does the linear algebra.
template <Scalar T>
class Decoder {
   public:
    Decoder(const Code<T> &code, DecoderConfig<T> cfg, double tol = kDefaultTol);

    PhaseVector<T> recover(const Syndrome<T> &syndrome) const;
    /// (p-kick, x-shift) per information mode.
    std::vector<std::pair<T, T>> residual_logical(const PhaseVector<T> &net) const;

    const Code<T> &code() const noexcept { return code_; }
    const SymplecticBasis<T> &basis() const noexcept { return basis_; }
    const DecoderConfig<T> &config() const noexcept { return cfg_; }
    /// Same basis, different logical prediction.
    Decoder with_config(DecoderConfig<T> cfg) const;

    /// Error-space directions that leave every syndrome and logical
    /// coordinate unchanged: ancilla-absorbed, then gauge (first, second).
    const std::vector<PhaseVector<T>> &stabilizer_directions() const noexcept { return stab_dirs_; }
    const std::vector<std::pair<PhaseVector<T>, PhaseVector<T>>> &gauge_directions() const noexcept {
        return gauge_dirs_;
    }

   private:
    Code<T> code_;
    DecoderConfig<T> cfg_;
    SymplecticBasis<T> basis_;
    std::vector<PhaseVector<T>> destab_dirs_;  // recovery direction per ancilla row
    std::vector<PhaseVector<T>> ebit_first_dirs_;
    std::vector<PhaseVector<T>> ebit_second_dirs_;
    std::vector<std::size_t> ebit_first_slot_;   // syndrome slots in flat (a, a1, a2)
    std::vector<std::size_t> ebit_second_slot_;
    std::vector<std::pair<PhaseVector<T>, PhaseVector<T>>> logical_dirs_;
    std::vector<PhaseVector<T>> stab_dirs_;
    std::vector<std::pair<PhaseVector<T>, PhaseVector<T>>> gauge_dirs_;
};

/// Decoder configuration under which the linear decoder exactly corrects
/// every error supported on `mode`. Exists whenever the code corrects errors
/// on that mode; throws InputError otherwise.
template <Scalar T>
DecoderConfig<T> single_mode_config(const Decoder<T> &decoder, std::size_t mode, double tol = kDefaultTol);

/// Nonlinear decoder for single-mode error sets: picks the mode whose error
/// space explains the syndrome best (smallest least-squares residual, lowest
/// index on ties) and applies that mode's fitted linear recovery. Exact on
/// every single-mode error when single_mode_correctability holds.
template <Scalar T>
class SingleModeDecoder {
   public:
    SingleModeDecoder(const Code<T> &code, double tol = kDefaultTol);

    PhaseVector<T> recover(const Syndrome<T> &syndrome) const;
    /// Mode whose error space explains the syndrome best.
    std::size_t pick(const Syndrome<T> &syndrome) const;

    /// Modes with a fitted recovery; modes whose errors are not correctable
    /// on their own are never picked.
    const std::vector<std::size_t> &modes() const noexcept { return modes_; }

   private:
    struct ModeFit {
        Matrix<T> images;  // independent syndrome images of the mode's errors, as columns
        Matrix<T> pinv;    // left inverse of `images`
    };

    double tol_;
    Decoder<T> base_;
    std::vector<std::size_t> modes_;
    std::vector<Decoder<T>> per_mode_;
    std::vector<ModeFit> fits_;
};

template <Scalar T>
PhaseVector<T> decode(const Code<T> &code, const Syndrome<T> &syndrome, const DecoderConfig<T> &cfg,
                      double tol = kDefaultTol);

template <Scalar T>
std::vector<std::pair<T, T>> residual_logical(const Code<T> &code, const PhaseVector<T> &net,
                                              double tol = kDefaultTol);

// Monte Carlo ---------------------------------------------------------------

struct GaussianNoise {
    double sigma = 0.0;
};
/// Errors of the correctable form: syndrome, ancilla-absorbed and gauge
/// coordinates i.i.d. N(0, sigma^2), logical part alpha/beta of the syndrome.
struct StructuredS0Noise {
    double sigma = 1.0;
    DecoderConfig<double> cfg;
};
struct SingleModeNoise {
    std::size_t mode = 0;  // 0-based
    double p = 0.0;
    double x = 0.0;
};
struct FixedNoise {
    PhaseVector<double> e;
};
using NoiseModel = std::variant<GaussianNoise, StructuredS0Noise, SingleModeNoise, FixedNoise>;

/// Additive Gaussian noise on each syndrome component with variance
/// 10^(-db/10) / 2. No value means ideal (infinitely squeezed) syndromes.
struct SqueezingModel {
    std::optional<double> db;

    double variance() const;
};

struct TrialStats {
    std::size_t trials = 0;
    double rms_logical_p = 0.0;  // over trials and information modes
    double rms_logical_x = 0.0;
    std::vector<double> rms_logical_p_per_mode;
    std::vector<double> rms_logical_x_per_mode;
    double mean_residual_norm = 0.0;  // Euclidean norm of the residual logical vector
    double frac_within_1e9 = 0.0;     // fraction of trials with that norm <= 1e-9
    double frac_within_1e2 = 0.0;     // ... <= 1e-2
};

/// Draws one error for `noise` from `rng`.
PhaseVector<double> sample_error(const Decoder<double> &decoder, const NoiseModel &noise, SplitMix64 &rng);

/// Runs `trials` independent trials. Each trial uses its own stream derived
/// from (seed, trial index), and partial sums are combined in a fixed order,
/// so the result is bitwise identical for any thread count. threads = 0
/// picks the hardware concurrency, capped by the CVEAO_THREADS environment
/// variable when set. The single-mode decoder ignores cfg.
enum class DecoderKind { linear, single_mode };

struct RunOptions {
    std::size_t threads = 0;
    double tol = kDefaultTol;
    DecoderKind decoder = DecoderKind::linear;
};

TrialStats run_trials(const Code<double> &code, const NoiseModel &noise, const DecoderConfig<double> &cfg,
                      const SqueezingModel &squeezing, std::size_t trials, std::uint64_t seed,
                      const RunOptions &options = {});

/// Throws InputError on invalid parameters (sigma <= 0, mode out of range...).
void check_noise(const NoiseModel &noise, const CodeParams &params);

// Results CSV ---------------------------------------------------------------

inline constexpr const char *kCsvHeader =
    "code,noise,sigma,squeezing_db,trials,seed,rms_logical_p,rms_logical_x,mean_residual_norm,"
    "frac_within_1e-9,frac_within_1e-2";

struct CsvRecord {
    std::string code;
    std::string noise;
    std::optional<double> sigma;
    SqueezingModel squeezing;
    std::uint64_t seed = 0;
    TrialStats stats;
};

/// One CSV line (no trailing newline); fields are quoted when needed.
std::string format_csv_row(const CsvRecord &record);

/// Appends a row, writing the header first when the file is new or empty.
void append_csv(const std::string &path, const CsvRecord &record);

}  // namespace cveao

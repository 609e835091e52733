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


// Command-line front end: code construction, validation, transformation,
// syndrome queries, Monte Carlo simulation, circuit synthesis and import of
// discrete codes. Exit codes: 0 success, 1 validation or decode failure,
// 2 input error.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "cveao/barnes.hpp"
#include "cveao/channel.hpp"
#include "cveao/circuit.hpp"
#include "cveao/code.hpp"
#include "cveao/code_io.hpp"
#include "cveao/errors.hpp"
#include "cveao/noise_spec.hpp"
#include "cveao/symplectic.hpp"

namespace {

using namespace cveao;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInputError = 2;

void emit(const std::string &text, const std::string &out) {
    if (out.empty() || out == "-") {
        std::cout << text;
    } else {
        write_text_file(out, text);
    }
}

Code<Rational> load_code(const std::string &path) { return parse_code(read_text_file(path)); }

struct Options {
    double tol = kDefaultTol;
    bool no_timestamp = false;
    std::string out;
};

int cmd_validate(const std::string &path, const Options &opt) {
    Code<Rational> code = load_code(path);
    ValidationReport report = validate(code, opt.tol);
    std::cout << report.to_string();
    return report.all_passed() ? kOk : kFailed;
}

int cmd_write_code(const Code<Rational> &code, const Options &opt) {
    emit(format_code(code, !opt.no_timestamp), opt.out);
    return kOk;
}

int cmd_syndrome(const std::string &path, const std::string &inline_error, const std::string &error_file,
                 const Options &opt) {
    Code<Rational> code = load_code(path);
    ValidationReport report = validate(code, opt.tol);
    if (!report.all_passed()) {
        std::cerr << report.to_string();
        return kFailed;
    }
    if (inline_error.empty() == error_file.empty()) {
        throw InputError("give exactly one of --error or --error-file");
    }
    PhaseVector<Rational> e = parse_vector(inline_error.empty() ? read_text_file(error_file) : inline_error);
    if (e.modes() != code.params.n) {
        throw InputError("error vector has " + std::to_string(e.size()) + " entries, code needs " +
                         std::to_string(2 * code.params.n));
    }
    std::cout << extract_syndrome(code, e).to_string() << '\n';
    return kOk;
}

struct SimulateArgs {
    std::string code_file;
    std::string noise;
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    std::optional<double> squeezing_db;
    std::string alpha_file;
    std::string beta_file;
    std::string decoder = "linear";
    std::string label;
    std::size_t threads = 0;
};

int cmd_simulate(const SimulateArgs &args, const Options &opt) {
    Code<Rational> exact = load_code(args.code_file);
    ValidationReport report = validate(exact, opt.tol);
    if (!report.all_passed()) {
        std::cerr << report.to_string();
        return kFailed;
    }
    Code<double> code = exact.cast<double>();
    NoiseSpec spec = parse_noise_spec(args.noise, code.params);

    DecoderConfig<double> cfg = DecoderConfig<double>::zero(code.params);
    if (auto *s0 = std::get_if<StructuredS0Noise>(&spec.model)) {
        cfg = s0->cfg;  // the decoder knows the error set it is meant to correct
    }
    if (!args.alpha_file.empty()) {
        cfg.alpha = parse_matrix(read_text_file(args.alpha_file)).cast<double>();
    }
    if (!args.beta_file.empty()) {
        cfg.beta = parse_matrix(read_text_file(args.beta_file)).cast<double>();
    }
    RunOptions run;
    run.tol = opt.tol;
    run.threads = args.threads;
    if (args.decoder == "linear") {
        run.decoder = DecoderKind::linear;
    } else if (args.decoder == "single-mode") {
        run.decoder = DecoderKind::single_mode;
    } else {
        throw InputError("unknown decoder '" + args.decoder + "'");
    }
    SqueezingModel squeezing{args.squeezing_db};
    TrialStats stats = run_trials(code, spec.model, cfg, squeezing, args.trials, args.seed, run);

    CsvRecord record;
    record.code = args.label.empty() ? std::filesystem::path(args.code_file).stem().string() : args.label;
    record.noise = args.noise;
    record.sigma = spec.sigma;
    record.squeezing = squeezing;
    record.seed = args.seed;
    record.stats = stats;
    if (!opt.out.empty()) {
        append_csv(opt.out, record);
    }
    std::cout << kCsvHeader << '\n' << format_csv_row(record) << '\n';
    return kOk;
}

int cmd_synthesize(const std::string &path, const Options &opt) {
    Matrix<double> upsilon = parse_matrix(read_text_file(path)).cast<double>();
    if (!upsilon.is_square() || upsilon.rows() % 2 != 0 || upsilon.rows() == 0) {
        throw InputError("symplectic matrix must be square with even size, got " + upsilon.shape());
    }
    CircuitDecomposition d = bloch_messiah(upsilon, opt.tol);
    emit(emit_circuit(d), opt.out);
    return kOk;
}

int cmd_import(const std::string &path, const std::string &target, std::uint64_t seed, const Options &opt) {
    Matrix<Rational> binary = parse_matrix(read_text_file(path));
    if (binary.cols() % 2 != 0) {
        throw InputError("binary matrix needs an even number of columns, got " + std::to_string(binary.cols()));
    }
    std::vector<PhaseVector<Rational>> rows;
    for (std::size_t r = 0; r < binary.rows(); ++r) {
        rows.push_back(binary.row(r));
    }
    Matrix<Rational> pattern(rows.size(), rows.size());
    if (target != "zero") {
        pattern = parse_matrix(read_text_file(target));
    }
    BarnesOptions options;
    options.seed = seed;
    auto lifted = barnes_lift(rows, pattern, options);
    std::string text = "# signed lift; symplectic products match the target pattern\n";
    text += format_matrix(Matrix<Rational>::from_rows(lifted, binary.cols()));
    emit(text, opt.out);
    return kOk;
}

int cmd_transform(const std::string &path, const std::string &symplectic, const Options &opt) {
    Code<Rational> code = load_code(path);
    Matrix<Rational> upsilon = parse_matrix(read_text_file(symplectic));
    Code<Rational> out = apply_symplectic(code, upsilon, opt.tol);
    emit(format_code(out, !opt.no_timestamp), opt.out);
    return kOk;
}

int cmd_correctable(const std::string &path, const Options &opt) {
    Code<Rational> code = load_code(path);
    ValidationReport report = validate(code, opt.tol);
    if (!report.all_passed()) {
        std::cerr << report.to_string();
        return kFailed;
    }
    auto failures = uncorrectable_mode_pairs(code, opt.tol);
    if (failures.empty()) {
        std::cout << "single-mode errors: correctable\n";
        return kOk;
    }
    std::cout << "single-mode errors: not correctable\n";
    for (const auto &[i, j] : failures) {
        std::cout << "modes " << i + 1 << "," << j + 1 << '\n';
    }
    return kFailed;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Continuous-variable entanglement-assisted operator codes"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--tol", opt.tol, "Float tolerance")->check(CLI::PositiveNumber);

    std::string code_file;
    auto *validate_cmd = app.add_subcommand("validate", "Check every invariant of a code file");
    validate_cmd->add_option("code", code_file, "Code file")->required();

    std::size_t k = 0, l = 0, r = 0, c = 0;
    auto *canonical_cmd = app.add_subcommand("canonical", "Write the canonical code");
    canonical_cmd->add_option("--k", k, "Information modes");
    canonical_cmd->add_option("--l", l, "Ancilla modes");
    canonical_cmd->add_option("--r", r, "Gauge modes");
    canonical_cmd->add_option("--c", c, "Ebits");
    auto *example_cmd = app.add_subcommand("example", "Write the eight-mode example code");
    for (auto *cmd : {canonical_cmd, example_cmd}) {
        cmd->add_option("--out,-o", opt.out, "Output file (default stdout)");
        cmd->add_flag("--no-timestamp", opt.no_timestamp, "Omit the timestamp comment");
    }

    std::string inline_error, error_file;
    auto *syndrome_cmd = app.add_subcommand("syndrome", "Print the syndrome (a | a1 | a2) of an error");
    syndrome_cmd->add_option("code", code_file, "Code file")->required();
    syndrome_cmd->add_option("--error,-e", inline_error, "Error vector (p | x entries, space or comma separated)");
    syndrome_cmd->add_option("--error-file", error_file, "File holding the error vector");

    SimulateArgs sim;
    double squeezing_db = 0.0;
    auto *simulate_cmd = app.add_subcommand("simulate", "Monte Carlo simulation; appends a CSV row");
    simulate_cmd->add_option("code", sim.code_file, "Code file")->required();
    simulate_cmd->add_option("--noise", sim.noise, "Noise model")->required();
    simulate_cmd->add_option("--trials", sim.trials, "Number of trials")->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--seed", sim.seed, "Random seed");
    auto *sq_opt = simulate_cmd->add_option("--squeezing-db", squeezing_db, "Finite squeezing of syndrome ancillas");
    simulate_cmd->add_option("--alpha", sim.alpha_file, "Decoder alpha matrix file");
    simulate_cmd->add_option("--beta", sim.beta_file, "Decoder beta matrix file");
    simulate_cmd->add_option("--decoder", sim.decoder, "linear or single-mode");
    simulate_cmd->add_option("--label", sim.label, "Code label for the CSV (default: file stem)");
    simulate_cmd->add_option("--threads", sim.threads, "Worker threads (0 = auto)");
    simulate_cmd->add_option("--out,-o", opt.out, "CSV file to append to");

    std::string symplectic_file;
    auto *synth_cmd = app.add_subcommand("synthesize", "Bloch-Messiah circuit for a symplectic matrix");
    synth_cmd->add_option("--symplectic", symplectic_file, "Matrix file")->required();
    synth_cmd->add_option("--out,-o", opt.out, "Output file (default stdout)");

    std::string binary_file, target = "zero";
    std::uint64_t import_seed = 1;
    auto *import_cmd = app.add_subcommand("import-discrete", "Sign-lift a binary check matrix");
    import_cmd->add_option("matrix", binary_file, "Binary matrix file")->required();
    import_cmd->add_option("--target", target, "zero or a file with the target product pattern");
    import_cmd->add_option("--seed", import_seed, "Seed for the randomized search");
    import_cmd->add_option("--out,-o", opt.out, "Output file (default stdout)");

    auto *transform_cmd = app.add_subcommand("transform", "Apply a symplectic matrix to a code");
    transform_cmd->add_option("code", code_file, "Code file")->required();
    transform_cmd->add_option("--symplectic", symplectic_file, "Matrix file")->required();
    transform_cmd->add_option("--out,-o", opt.out, "Output file (default stdout)");
    transform_cmd->add_flag("--no-timestamp", opt.no_timestamp, "Omit the timestamp comment");

    auto *correctable_cmd = app.add_subcommand("correctable", "Decide single-mode correctability");
    correctable_cmd->add_option("code", code_file, "Code file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kInputError;
    }

    try {
        if (*validate_cmd) {
            return cmd_validate(code_file, opt);
        }
        if (*canonical_cmd) {
            return cmd_write_code(canonical_code<Rational>(k, l, r, c), opt);
        }
        if (*example_cmd) {
            return cmd_write_code(example_code<Rational>(), opt);
        }
        if (*syndrome_cmd) {
            return cmd_syndrome(code_file, inline_error, error_file, opt);
        }
        if (*simulate_cmd) {
            if (sq_opt->count()) {
                sim.squeezing_db = squeezing_db;
            }
            return cmd_simulate(sim, opt);
        }
        if (*synth_cmd) {
            return cmd_synthesize(symplectic_file, opt);
        }
        if (*import_cmd) {
            return cmd_import(binary_file, target, import_seed, opt);
        }
        if (*transform_cmd) {
            return cmd_transform(code_file, symplectic_file, opt);
        }
        if (*correctable_cmd) {
            return cmd_correctable(code_file, opt);
        }
    } catch (const ParseError &e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kInputError;
    } catch (const InputError &e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const NumericalError &e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kFailed;
    } catch (const SearchExhaustedError &e) {
        std::cerr << "search failed: " << e.what() << '\n';
        return kFailed;
    }
    return kInputError;
}

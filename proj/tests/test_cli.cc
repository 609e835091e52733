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


#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "cveao/barnes.hpp"
#include "cveao/channel.hpp"
#include "cveao/circuit.hpp"
#include "cveao/code_io.hpp"
#include "test_util.hpp"

namespace cveao {
namespace {

namespace fs = std::filesystem;

struct Run {
    int status;
    std::string out;
};

Run run(const std::string &args) {
    std::string cmd = std::string(CVEAO_CLI) + " " + args + " 2>&1";
    FILE *pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        return {-1, ""};
    }
    std::string out;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) {
        out.append(buf, got);
    }
    int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string data(const std::string &name) { return std::string(CVEAO_DATA_DIR) + "/" + name; }

class Cli : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("cveao_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string tmp(const std::string &name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

std::vector<std::string> csv_fields(const std::string &line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (char ch : line) {
        if (ch == '"') {
            quoted = !quoted;
        } else if (ch == ',' && !quoted) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

std::string last_line(const std::string &text) {
    std::istringstream in(text);
    std::string line, last;
    while (std::getline(in, line)) {
        if (!line.empty()) {
            last = line;
        }
    }
    return last;
}

TEST_F(Cli, ValidateShippedExample) {
    auto r = run("validate " + data("example.code"));
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST_F(Cli, ValidateCorruptedBobSign) {
    std::string text = read_text_file(data("example.code"));
    auto pos = text.find("; 0 1\n");
    ASSERT_NE(pos, std::string::npos);
    text.replace(pos, 6, "; 0 -1\n");
    write_text_file(tmp("bad.code"), text);
    auto r = run("validate " + tmp("bad.code"));
    EXPECT_EQ(r.status, 1);
    EXPECT_NE(r.out.find("FAIL check_commutation: rows 4,5"), std::string::npos) << r.out;
}

TEST_F(Cli, ValidateEmptyFileIsInputError) {
    write_text_file(tmp("empty.code"), "");
    EXPECT_EQ(run("validate " + tmp("empty.code")).status, 2);
    EXPECT_EQ(run("validate " + tmp("missing.code")).status, 2);
}

TEST_F(Cli, CanonicalSmallCode) {
    auto r = run("canonical --k 1 --l 1 --r 1 --c 1 --no-timestamp -o " + tmp("c.code"));
    ASSERT_EQ(r.status, 0) << r.out;
    auto code = parse_code(read_text_file(tmp("c.code")));
    EXPECT_EQ(code.checks.size(), 3u);
    EXPECT_EQ(code.gauge.size(), 2u);
    EXPECT_EQ(run("validate " + tmp("c.code")).status, 0);
}

TEST_F(Cli, CanonicalInformationOnly) {
    auto r = run("canonical --k 1 --l 0 --r 0 --c 0 --no-timestamp");
    ASSERT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("F\nG\n"), std::string::npos) << r.out;
}

TEST_F(Cli, ExampleMatchesShippedFileAndLibrary) {
    auto r = run("example --no-timestamp");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(r.out, read_text_file(data("example.code")));
    auto code = parse_code(r.out);
    auto lib = example_code<Rational>();
    EXPECT_EQ(code.checks, lib.checks);
    EXPECT_EQ(code.gauge, lib.gauge);
}

TEST_F(Cli, OutputDiffersOnlyInTimestampLine) {
    auto a = run("example").out;
    auto b = run("example --no-timestamp").out;
    auto pos = a.find("# written ");
    ASSERT_NE(pos, std::string::npos);
    EXPECT_EQ(a.substr(0, pos) + a.substr(a.find('\n', pos) + 1), b);
}

TEST_F(Cli, SyndromeQueries) {
    const std::string ex = data("example.code");
    auto zero = run("syndrome " + ex + " --error \"0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\"");
    EXPECT_EQ(zero.status, 0);
    EXPECT_EQ(zero.out, "0 0 0 0 | 0 | 0\n");
    auto unit = run("syndrome " + ex + " -e 0,0,0,0,0,0,0,0,1,0,0,0,0,0,0,0");
    EXPECT_EQ(unit.out, "1 1 0 0 | 0 | 0\n");
    write_text_file(tmp("e.txt"), "0 0 0 0 0 0 0 0\n1 0 0 0 0 0 0 0\n");
    EXPECT_EQ(run("syndrome " + ex + " --error-file " + tmp("e.txt")).out, "1 1 0 0 | 0 | 0\n");
    auto bad = run("syndrome " + ex + " -e \"1 0\"");
    EXPECT_EQ(bad.status, 2);
    EXPECT_NE(bad.out.find("entries"), std::string::npos);
    EXPECT_EQ(run("syndrome " + ex).status, 2);
}

TEST_F(Cli, SyndromeOfCanonicalS0Error) {
    ASSERT_EQ(run("canonical --k 1 --l 1 --r 1 --c 1 -o " + tmp("c.code")).status, 0);
    // info p, ancilla p, gauge p, ebit p | info x, ancilla x, gauge x, ebit x
    auto r = run("syndrome " + tmp("c.code") + " -e \"5 9 -4 3/2 -1 2 7 1/3\"");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "2 | 1/3 | 3/2\n");
}

TEST_F(Cli, SimulateFixedZero) {
    ASSERT_EQ(run("canonical --k 1 --l 1 --r 1 --c 1 -o " + tmp("c.code")).status, 0);
    auto r = run("simulate " + tmp("c.code") + " --noise fixed:zero --trials 10 -o " + tmp("out.csv"));
    ASSERT_EQ(r.status, 0) << r.out;
    EXPECT_EQ(last_line(read_text_file(tmp("out.csv"))), "c,fixed:zero,,inf,10,1,0,0,0,1,1");
}

TEST_F(Cli, SimulateS0ExactWithMatchingDecoder) {
    ASSERT_EQ(run("canonical --k 2 --l 1 --r 1 --c 1 -o " + tmp("c.code")).status, 0);
    write_text_file(tmp("alpha.txt"), "1 0 -1/2\n0 2 0\n");
    write_text_file(tmp("beta.txt"), "0 1 0\n3/4 0 1\n");
    auto r = run("simulate " + tmp("c.code") + " --noise s0:alpha=" + tmp("alpha.txt") + ",beta=" + tmp("beta.txt") +
                 " --trials 1000 --seed 4");
    ASSERT_EQ(r.status, 0) << r.out;
    auto f = csv_fields(last_line(r.out));
    ASSERT_EQ(f.size(), 11u);
    EXPECT_LE(std::stod(f[6]), 1e-9);
    EXPECT_LE(std::stod(f[7]), 1e-9);
    // The same noise with a mismatched decoder leaves residuals.
    auto m = run("simulate " + tmp("c.code") + " --noise s0:alpha=" + tmp("alpha.txt") + " --alpha " +
                 tmp("beta.txt") + " --trials 100");
    EXPECT_GT(std::stod(csv_fields(last_line(m.out))[6]), 1e-3);
}

TEST_F(Cli, SimulateGaussianBaselineAndDeterminism) {
    ASSERT_EQ(run("canonical --k 1 --l 1 --r 1 --c 1 -o " + tmp("c.code")).status, 0);
    const std::string cmd =
        "simulate " + tmp("c.code") + " --noise gaussian:sigma=0.01 --trials 100000 --seed 9 -o " + tmp("g.csv");
    auto a = run(cmd);
    auto b = run("--tol 1e-9 " + cmd + " --threads 1");
    ASSERT_EQ(a.status, 0) << a.out;
    EXPECT_EQ(last_line(a.out), last_line(b.out));
    auto f = csv_fields(last_line(a.out));
    EXPECT_NEAR(std::stod(f[6]), 0.01, 0.0005);
    EXPECT_NEAR(std::stod(f[7]), 0.01, 0.0005);
    std::string csv = read_text_file(tmp("g.csv"));
    EXPECT_EQ(csv.find(kCsvHeader), 0u);
    EXPECT_EQ(csv.find(kCsvHeader, 1), std::string::npos);
}

TEST_F(Cli, SimulateSingleModeDecoderOnExample) {
    auto r = run("simulate " + data("example.code") + " --noise single:mode=4,p=0.7,x=-0.2 --decoder single-mode "
                 "--trials 3 --label ex");
    ASSERT_EQ(r.status, 0) << r.out;
    auto f = csv_fields(last_line(r.out));
    EXPECT_EQ(f[0], "ex");
    EXPECT_EQ(f[1], "single:mode=4,p=0.7,x=-0.2");
    EXPECT_LE(std::stod(f[8]), 1e-9);
}

TEST_F(Cli, SimulateRejectsBadNoise) {
    for (const char *noise : {"gaussian", "gaussian:sigma=-1", "single:mode=9", "foo"}) {
        EXPECT_EQ(run("simulate " + data("example.code") + " --noise " + noise).status, 2) << noise;
    }
    EXPECT_EQ(run("simulate " + data("example.code") + " --noise s0 --decoder magic").status, 2);
}

TEST_F(Cli, SimulateFiniteSqueezing) {
    // Syndrome noise only reaches the logical modes through alpha and beta.
    write_text_file(tmp("alpha.txt"), "1 0 0 0 1 0\n");
    const std::string base = "simulate " + data("example.code") + " --noise s0:sigma=0.1,alpha=" + tmp("alpha.txt") +
                             " --trials 200";
    auto ideal = run(base);
    ASSERT_EQ(ideal.status, 0) << ideal.out;
    EXPECT_LE(std::stod(csv_fields(last_line(ideal.out))[6]), 1e-9);
    auto r = run(base + " --squeezing-db 10");
    ASSERT_EQ(r.status, 0) << r.out;
    auto f = csv_fields(last_line(r.out));
    EXPECT_EQ(f[3], "10");
    EXPECT_GT(std::stod(f[6]), 1e-3);
}

TEST_F(Cli, SynthesizeIdentity) {
    write_text_file(tmp("i.txt"), "1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n");
    auto r = run("synthesize --symplectic " + tmp("i.txt"));
    ASSERT_EQ(r.status, 0) << r.out;
    EXPECT_NE(r.out.find("SQUEEZE\nmode 1: 0.0000 dB"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("mode 2: 0.0000 dB"), std::string::npos);
}

TEST_F(Cli, SynthesizeRandomEightByEight) {
    testing::Rng rng(3);
    auto u = testing::random_double_symplectic(4, rng);
    std::string text;
    for (std::size_t r = 0; r < 8; ++r) {
        for (std::size_t c = 0; c < 8; ++c) {
            text += (c ? " " : "") + format_scalar(u(r, c));
        }
        text += '\n';
    }
    write_text_file(tmp("u.txt"), text);
    auto r = run("synthesize --symplectic " + tmp("u.txt") + " -o " + tmp("circuit.txt"));
    ASSERT_EQ(r.status, 0) << r.out;
    auto d = parse_circuit(read_text_file(tmp("circuit.txt")));
    EXPECT_LE((testing::to_eigen(d.reconstruct()) - testing::to_eigen(u)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST_F(Cli, SynthesizeRejectsNonSymplectic) {
    write_text_file(tmp("m.txt"), "1 1\n0 2\n");
    EXPECT_EQ(run("synthesize --symplectic " + tmp("m.txt")).status, 2);
    write_text_file(tmp("odd.txt"), "1 0 0\n0 1 0\n0 0 1\n");
    EXPECT_EQ(run("synthesize --symplectic " + tmp("odd.txt")).status, 2);
}

TEST_F(Cli, ImportExampleSkeleton) {
    auto r = run("import-discrete " + data("example_skeleton.txt") + " --target zero -o " + tmp("lift.txt"));
    ASSERT_EQ(r.status, 0) << r.out;
    auto lifted = parse_matrix(read_text_file(tmp("lift.txt")));
    auto skeleton = parse_matrix(read_text_file(data("example_skeleton.txt")));
    ASSERT_EQ(lifted.rows(), skeleton.rows());
    std::vector<PhaseVector<Rational>> rows;
    for (std::size_t i = 0; i < lifted.rows(); ++i) {
        rows.push_back(lifted.row(i));
        for (std::size_t c = 0; c < lifted.cols(); ++c) {
            EXPECT_EQ(abs(lifted(i, c)), skeleton(i, c));
        }
    }
    EXPECT_EQ(product_table(rows), Matrix<Rational>(rows.size(), rows.size()));
}

TEST_F(Cli, ImportWithPatternAndFailure) {
    write_text_file(tmp("b.txt"), "1 0 0 0\n0 0 1 0\n");
    write_text_file(tmp("t.txt"), "0 -1\n1 0\n");
    auto r = run("import-discrete " + tmp("b.txt") + " --target " + tmp("t.txt"));
    ASSERT_EQ(r.status, 0) << r.out;
    write_text_file(tmp("same.txt"), "1 0 0 0\n1 0 0 0\n");
    EXPECT_EQ(run("import-discrete " + tmp("same.txt") + " --target " + tmp("t.txt")).status, 1);
    write_text_file(tmp("nb.txt"), "2 0 0 0\n");
    EXPECT_EQ(run("import-discrete " + tmp("nb.txt")).status, 2);
}

TEST_F(Cli, TransformRoundTrip) {
    ASSERT_EQ(run("canonical --k 1 --l 1 --r 0 --c 0 --no-timestamp -o " + tmp("c.code")).status, 0);
    write_text_file(tmp("u.txt"), "1 1 0 0\n0 1 0 0\n0 0 1 0\n0 0 -1 1\n");
    write_text_file(tmp("uinv.txt"), "1 -1 0 0\n0 1 0 0\n0 0 1 0\n0 0 1 1\n");
    ASSERT_EQ(run("transform " + tmp("c.code") + " --symplectic " + tmp("u.txt") + " --no-timestamp -o " +
                  tmp("t.code")).status,
              0);
    EXPECT_EQ(run("validate " + tmp("t.code")).status, 0);
    ASSERT_EQ(run("transform " + tmp("t.code") + " --symplectic " + tmp("uinv.txt") + " --no-timestamp -o " +
                  tmp("back.code")).status,
              0);
    auto a = parse_code(read_text_file(tmp("c.code")));
    auto b = parse_code(read_text_file(tmp("back.code")));
    EXPECT_EQ(a.checks, b.checks);
    EXPECT_EQ(a.gauge, b.gauge);
    EXPECT_EQ(run("transform " + tmp("c.code") + " --symplectic " + tmp("uinv.txt") + "x").status, 2);
    write_text_file(tmp("bad.txt"), "2 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n");
    EXPECT_EQ(run("transform " + tmp("c.code") + " --symplectic " + tmp("bad.txt")).status, 2);
}

TEST_F(Cli, Correctable) {
    auto ok = run("correctable " + data("example.code"));
    EXPECT_EQ(ok.status, 0);
    EXPECT_EQ(ok.out, "single-mode errors: correctable\n");
    ASSERT_EQ(run("canonical --k 1 --l 1 -o " + tmp("c.code")).status, 0);
    auto bad = run("correctable " + tmp("c.code"));
    EXPECT_EQ(bad.status, 1);
    EXPECT_NE(bad.out.find("modes 1,1"), std::string::npos) << bad.out;
}

TEST_F(Cli, UsageErrors) {
    EXPECT_EQ(run("").status, 2);
    EXPECT_EQ(run("frobnicate").status, 2);
    EXPECT_EQ(run("--help").status, 0);
    EXPECT_EQ(run("simulate " + data("example.code")).status, 2);
}

}  // namespace
}  // namespace cveao

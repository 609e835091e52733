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


#include "cveao/code_io.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "cveao/errors.hpp"

namespace cveao {

namespace {

struct Line {
    std::size_t number;
    std::string text;  // comment stripped, trimmed
};

std::string trim(std::string_view s) {
    const char *ws = " \t\r\n";
    std::size_t b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    std::size_t e = s.find_last_not_of(ws);
    return std::string(s.substr(b, e - b + 1));
}

std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view raw = text.substr(pos, end - pos);
        ++number;
        if (std::size_t hash = raw.find('#'); hash != std::string_view::npos) {
            raw = raw.substr(0, hash);
        }
        out.push_back({number, trim(raw)});
        pos = end + 1;
    }
    return out;
}

std::vector<std::string> tokens(std::string_view s, bool commas = false) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ' ' || ch == '\t' || ch == '\r' || (commas && ch == ',')) {
            if (!cur.empty()) {
                out.push_back(std::move(cur));
                cur.clear();
            }
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) {
        out.push_back(std::move(cur));
    }
    return out;
}

std::vector<Rational> parse_entries(const std::vector<std::string> &toks, std::size_t line) {
    std::vector<Rational> out;
    for (const auto &t : toks) {
        try {
            out.push_back(parse_scalar<Rational>(t));
        } catch (const InputError &e) {
            throw ParseError(e.what(), line);
        }
    }
    return out;
}

std::size_t parse_count(std::string_view s, std::size_t line) {
    if (s.empty()) {
        throw ParseError("missing integer", line);
    }
    std::size_t v = 0;
    for (char ch : s) {
        if (ch < '0' || ch > '9') {
            throw ParseError("bad integer '" + std::string(s) + "'", line);
        }
        v = v * 10 + static_cast<std::size_t>(ch - '0');
    }
    return v;
}

template <class M>
std::string format_matrix_impl(const M &m) {
    std::string out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) {
                out += ' ';
            }
            out += format_scalar(m(r, c));
        }
        out += '\n';
    }
    return out;
}

std::string join_entries(const PhaseVector<Rational> &v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) {
            out += ' ';
        }
        out += format_scalar(v[i]);
    }
    return out;
}

}  // namespace

std::vector<Matrix<Rational>> parse_matrix_blocks(std::string_view text) {
    std::vector<Matrix<Rational>> blocks;
    std::vector<std::vector<Rational>> rows;
    std::size_t first_line = 0;
    auto flush = [&] {
        if (rows.empty()) {
            return;
        }
        Matrix<Rational> m(rows.size(), rows[0].size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != rows[0].size()) {
                throw ParseError("row has " + std::to_string(rows[r].size()) + " entries, expected " +
                                     std::to_string(rows[0].size()),
                                 first_line + r);
            }
            for (std::size_t c = 0; c < rows[r].size(); ++c) {
                m(r, c) = rows[r][c];
            }
        }
        blocks.push_back(std::move(m));
        rows.clear();
    };
    // Comment-only lines do not end a block; truly blank lines do.
    std::size_t pos = 0;
    std::size_t lineno = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view raw = text.substr(pos, end - pos);
        ++lineno;
        pos = end + 1;
        bool comment = raw.find('#') != std::string_view::npos;
        if (comment) {
            raw = raw.substr(0, raw.find('#'));
        }
        std::string t = trim(raw);
        if (t.empty()) {
            if (!comment) {
                flush();
            }
            continue;
        }
        if (rows.empty()) {
            first_line = lineno;
        }
        rows.push_back(parse_entries(tokens(t), lineno));
    }
    flush();
    return blocks;
}

Matrix<Rational> parse_matrix(std::string_view text) {
    auto blocks = parse_matrix_blocks(text);
    if (blocks.size() != 1) {
        throw ParseError("expected one matrix block, found " + std::to_string(blocks.size()), 0);
    }
    return std::move(blocks[0]);
}

std::string format_matrix(const Matrix<Rational> &m) { return format_matrix_impl(m); }
std::string format_matrix(const Matrix<double> &m) { return format_matrix_impl(m); }

PhaseVector<Rational> parse_vector(std::string_view text) {
    std::vector<std::string> toks;
    for (const Line &line : split_lines(text)) {
        for (auto &t : tokens(line.text, true)) {
            toks.push_back(std::move(t));
        }
    }
    auto entries = parse_entries(toks, 0);
    if (entries.empty() || entries.size() % 2 != 0) {
        throw ParseError("a phase vector needs a positive even number of entries, got " +
                             std::to_string(entries.size()),
                         0);
    }
    return PhaseVector<Rational>::from_flat(std::move(entries));
}

Code<Rational> parse_code(std::string_view text) {
    Code<Rational> code;
    bool have_params = false;
    bool have_roles = false;
    enum class Section { header, f, g, upsilon } section = Section::header;
    std::vector<std::vector<Rational>> upsilon_rows;
    std::size_t upsilon_line = 0;

    for (const Line &line : split_lines(text)) {
        if (line.text.empty()) {
            continue;
        }
        auto toks = tokens(line.text);
        const std::string &head = toks[0];
        if (head == "params") {
            std::map<std::string, std::size_t> kv;
            for (std::size_t i = 1; i < toks.size(); ++i) {
                std::size_t eq = toks[i].find('=');
                if (eq == std::string::npos) {
                    throw ParseError("expected key=value, got '" + toks[i] + "'", line.number);
                }
                kv[toks[i].substr(0, eq)] = parse_count(std::string_view(toks[i]).substr(eq + 1), line.number);
            }
            for (const char *key : {"n", "k", "l", "r", "c"}) {
                if (!kv.count(key)) {
                    throw ParseError(std::string("params is missing ") + key, line.number);
                }
            }
            code.params = {kv["n"], kv["k"], kv["l"], kv["r"], kv["c"]};
            if (!code.params.consistent()) {
                throw ParseError("params do not satisfy n = k + l + r + c", line.number);
            }
            have_params = true;
            continue;
        }
        if (head == "roles") {
            if (!have_params) {
                throw ParseError("roles before params", line.number);
            }
            std::vector<std::optional<ModeRole>> roles(code.params.n);
            for (std::size_t i = 1; i < toks.size(); ++i) {
                std::size_t colon = toks[i].find(':');
                if (colon == std::string::npos) {
                    throw ParseError("expected role:indices, got '" + toks[i] + "'", line.number);
                }
                std::string name = toks[i].substr(0, colon);
                ModeRole role;
                if (name == "info") {
                    role = ModeRole::information;
                } else if (name == "ancilla") {
                    role = ModeRole::ancilla;
                } else if (name == "gauge") {
                    role = ModeRole::gauge;
                } else if (name == "ebit") {
                    role = ModeRole::ebit;
                } else {
                    throw ParseError("unknown role '" + name + "'", line.number);
                }
                for (const auto &idx : tokens(std::string_view(toks[i]).substr(colon + 1), true)) {
                    std::size_t m = parse_count(idx, line.number);
                    if (m == 0 || m > code.params.n) {
                        throw ParseError("mode index " + idx + " out of range", line.number);
                    }
                    if (roles[m - 1]) {
                        throw ParseError("mode " + idx + " assigned twice", line.number);
                    }
                    roles[m - 1] = role;
                }
            }
            for (std::size_t m = 0; m < roles.size(); ++m) {
                if (!roles[m]) {
                    throw ParseError("mode " + std::to_string(m + 1) + " has no role", line.number);
                }
                code.roles.push_back(*roles[m]);
            }
            have_roles = true;
            continue;
        }
        if (head == "F" && toks.size() == 1) {
            section = Section::f;
            continue;
        }
        if (head == "G" && toks.size() == 1) {
            section = Section::g;
            continue;
        }
        if (head == "UPSILON" && toks.size() == 1) {
            section = Section::upsilon;
            upsilon_line = line.number;
            continue;
        }
        if (!have_params || !have_roles) {
            throw ParseError("params and roles must come before matrix data", line.number);
        }
        const std::size_t n = code.params.n;
        const std::size_t c = code.params.c;
        switch (section) {
            case Section::header:
                throw ParseError("unexpected line '" + line.text + "'", line.number);
            case Section::f: {
                RowKind kind;
                try {
                    kind = parse_row_kind(head);
                } catch (const InputError &e) {
                    throw ParseError(e.what(), line.number);
                }
                std::string rest = line.text.substr(head.size());
                std::size_t semi = rest.find(';');
                std::string alice_text = semi == std::string::npos ? rest : rest.substr(0, semi);
                std::string bob_text = semi == std::string::npos ? std::string() : rest.substr(semi + 1);
                auto alice = parse_entries(tokens(alice_text), line.number);
                auto bob = parse_entries(tokens(bob_text), line.number);
                if (alice.size() != 2 * n) {
                    throw ParseError("F row has " + std::to_string(alice.size()) + " Alice entries, expected " +
                                         std::to_string(2 * n),
                                     line.number);
                }
                if (bob.size() != 2 * c) {
                    throw ParseError("F row has " + std::to_string(bob.size()) + " Bob entries, expected " +
                                         std::to_string(2 * c),
                                     line.number);
                }
                code.checks.push_back({kind, PhaseVector<Rational>(n, std::move(alice)),
                                       PhaseVector<Rational>(c, std::move(bob))});
                break;
            }
            case Section::g: {
                auto entries = parse_entries(toks, line.number);
                if (entries.size() != 2 * n) {
                    throw ParseError("G row has " + std::to_string(entries.size()) + " entries, expected " +
                                         std::to_string(2 * n),
                                     line.number);
                }
                code.gauge.emplace_back(n, std::move(entries));
                break;
            }
            case Section::upsilon: {
                auto entries = parse_entries(toks, line.number);
                if (entries.size() != 2 * n) {
                    throw ParseError("UPSILON row has " + std::to_string(entries.size()) + " entries, expected " +
                                         std::to_string(2 * n),
                                     line.number);
                }
                upsilon_rows.push_back(std::move(entries));
                break;
            }
        }
    }
    if (!have_params) {
        throw ParseError("missing params line", 0);
    }
    if (!have_roles) {
        throw ParseError("missing roles line", 0);
    }
    if (upsilon_line != 0) {
        const std::size_t dim = 2 * code.params.n;
        if (upsilon_rows.size() != dim) {
            throw ParseError("UPSILON has " + std::to_string(upsilon_rows.size()) + " rows, expected " +
                                 std::to_string(dim),
                             upsilon_line);
        }
        Matrix<Rational> u(dim, dim);
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t col = 0; col < dim; ++col) {
                u(r, col) = upsilon_rows[r][col];
            }
        }
        code.upsilon = std::move(u);
    }
    return code;
}

std::string format_code(const Code<Rational> &code, bool timestamp) {
    std::ostringstream out;
    out << "# cveao code file\n";
    if (timestamp) {
        std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        out << "# written " << buf << '\n';
    }
    const CodeParams &p = code.params;
    out << "params n=" << p.n << " k=" << p.k << " l=" << p.l << " r=" << p.r << " c=" << p.c << '\n';
    out << "roles";
    for (ModeRole role : {ModeRole::information, ModeRole::ancilla, ModeRole::gauge, ModeRole::ebit}) {
        out << ' ' << to_string(role) << ':';
        bool first = true;
        for (std::size_t m : code.modes_with_role(role)) {
            out << (first ? "" : ",") << m + 1;
            first = false;
        }
    }
    out << "\nF\n";
    for (const auto &row : code.checks) {
        out << to_string(row.kind) << ' ' << join_entries(row.alice) << " ;";
        if (row.bob.size()) {
            out << ' ' << join_entries(row.bob);
        }
        out << '\n';
    }
    out << "G\n";
    for (const auto &g : code.gauge) {
        out << join_entries(g) << '\n';
    }
    if (code.upsilon) {
        out << "UPSILON\n" << format_matrix(*code.upsilon);
    }
    return out.str();
}

std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string &path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw InputError("cannot write '" + path + "'");
    }
    out << text;
    if (!out) {
        throw InputError("write to '" + path + "' failed");
    }
}

}  // namespace cveao

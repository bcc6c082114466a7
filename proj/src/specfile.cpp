/// @file src/specfile.cpp
/// @brief Metric spec file parser and printer.

#include "lorcyl/specfile.hpp"

#include "lorcyl/errors.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace lorcyl {

namespace {

constexpr std::array<std::string_view, 5> kKeys = {"type", "E", "F", "G", "psi"};

struct Entry {
    std::string value;
    std::size_t line = 0;
    std::size_t column = 0;  // 1-based column of the first value character
    bool present = false;
};

bool is_blank(char c) { return c == ' ' || c == '\t'; }

std::size_t key_index(std::string_view key) {
    for (std::size_t i = 0; i < kKeys.size(); ++i) {
        if (kKeys[i] == key) return i;
    }
    return kKeys.size();
}

double parse_decimal(const Entry& e, std::string_view key) {
    std::string_view s = e.value;
    std::size_t skip = 0;
    if (!s.empty() && s.front() == '+') skip = 1;
    const std::string_view body = s.substr(skip);
    const bool starts_ok =
        !body.empty() && (std::isdigit(static_cast<unsigned char>(body.front())) ||
                          body.front() == '.' || body.front() == '-');
    double value = 0.0;
    if (starts_ok) {
        const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
        if (ec == std::errc() && ptr == body.data() + body.size() && std::isfinite(value)) {
            return value;
        }
    }
    throw ParseError("value of " + std::string(key) + " is not a decimal number: '" + e.value + "'",
                     e.line, e.column);
}

std::string format_number(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

std::string_view to_string(SpecKind k) noexcept {
    switch (k) {
        case SpecKind::Flat:      return "flat";
        case SpecKind::Conformal: return "conformal";
        case SpecKind::General:   return "general";
    }
    return "unknown";
}

// ─── MetricSpec ───────────────────────────────────────────────────────────────

MetricSpec MetricSpec::flat(const FlatMetric& m) {
    MetricSpec s;
    s.kind_ = SpecKind::Flat;
    s.flat_ = m;
    return s;
}

MetricSpec MetricSpec::conformal(const FlatMetric& m, Expression psi) {
    MetricSpec s;
    s.kind_ = SpecKind::Conformal;
    s.flat_ = m;
    s.psi_ = std::move(psi);
    return s;
}

MetricSpec MetricSpec::general(Expression E, Expression F, Expression G) {
    MetricSpec s;
    s.kind_ = SpecKind::General;
    s.e_expr_ = std::move(E);
    s.f_expr_ = std::move(F);
    s.g_expr_ = std::move(G);
    return s;
}

PointCoefficients MetricSpec::coefficients_at(double x, double y) const {
    switch (kind_) {
        case SpecKind::Flat:
            return {flat_->E(), flat_->F(), flat_->G()};
        case SpecKind::Conformal: {
            const double factor = std::exp(2.0 * psi_->evaluate(x, y));
            if (!std::isfinite(factor)) throw OverflowError("conformal factor overflowed");
            return {factor * flat_->E(), factor * flat_->F(), factor * flat_->G()};
        }
        case SpecKind::General:
            return {e_expr_->evaluate(x, y), f_expr_->evaluate(x, y), g_expr_->evaluate(x, y)};
    }
    throw DomainError("corrupt metric spec");
}

// ─── Parsing ──────────────────────────────────────────────────────────────────

MetricSpec parse_metric_spec(std::string_view text) {
    std::array<Entry, kKeys.size()> entries;
    std::size_t line_no = 0;
    std::size_t start = 0;

    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        ++line_no;
        const bool last = end == text.size();
        start = end + 1;

        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }

        std::size_t first = 0;
        while (first < line.size() && is_blank(line[first])) ++first;
        if (first == line.size()) {
            if (last) break;
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("expected 'key = value'", line_no, first + 1);
        }
        std::size_t key_end = eq;
        while (key_end > first && is_blank(line[key_end - 1])) --key_end;
        const std::string_view key = line.substr(first, key_end - first);
        if (key.empty()) throw ParseError("missing key before '='", line_no, eq + 1);

        const std::size_t idx = key_index(key);
        if (idx == kKeys.size()) {
            throw ParseError("unknown key '" + std::string(key) + "'", line_no, first + 1);
        }
        Entry& entry = entries[idx];
        if (entry.present) {
            throw ParseError("duplicate key '" + std::string(key) + "' (first given on line " +
                                 std::to_string(entry.line) + ")",
                             line_no, first + 1);
        }

        std::size_t vbegin = eq + 1;
        while (vbegin < line.size() && is_blank(line[vbegin])) ++vbegin;
        std::size_t vend = line.size();
        while (vend > vbegin && is_blank(line[vend - 1])) --vend;
        if (vbegin == vend) {
            throw ParseError("missing value for '" + std::string(key) + "'", line_no, eq + 2);
        }
        entry = Entry{std::string(line.substr(vbegin, vend - vbegin)), line_no, vbegin + 1, true};

        if (last) break;
    }

    const std::size_t eof_line = std::max<std::size_t>(line_no, 1);
    auto require = [&](std::size_t idx) -> const Entry& {
        if (!entries[idx].present) {
            throw ParseError("missing required key '" + std::string(kKeys[idx]) + "'", eof_line, 0);
        }
        return entries[idx];
    };

    const Entry& type = require(0);
    SpecKind kind;
    if (type.value == "flat") {
        kind = SpecKind::Flat;
    } else if (type.value == "conformal") {
        kind = SpecKind::Conformal;
    } else if (type.value == "general") {
        kind = SpecKind::General;
    } else {
        throw ParseError("type must be flat, conformal or general, got '" + type.value + "'",
                         type.line, type.column);
    }

    const Entry& e = require(1);
    const Entry& f = require(2);
    const Entry& g = require(3);
    const Entry& psi = entries[4];
    if (kind != SpecKind::Conformal && psi.present) {
        throw ParseError("psi is only allowed for type = conformal", psi.line, 0);
    }

    auto expr = [](const Entry& en) {
        return Expression::parse(en.value, en.line, en.column - 1);
    };

    if (kind == SpecKind::General) return MetricSpec::general(expr(e), expr(f), expr(g));

    const FlatMetric m =
        validate_lorentzian(parse_decimal(e, "E"), parse_decimal(f, "F"), parse_decimal(g, "G"));
    if (kind == SpecKind::Flat) return MetricSpec::flat(m);
    return MetricSpec::conformal(m, expr(require(4)));
}

MetricSpec load_metric_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read metric spec '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_metric_spec(buf.str());
}

std::string print_metric_spec(const MetricSpec& spec) {
    std::string out = "type = " + std::string(to_string(spec.kind())) + "\n";
    if (spec.kind() == SpecKind::General) {
        out += "E = " + spec.E_expr()->to_string() + "\n";
        out += "F = " + spec.F_expr()->to_string() + "\n";
        out += "G = " + spec.G_expr()->to_string() + "\n";
        return out;
    }
    const FlatMetric& m = *spec.flat_part();
    out += "E = " + format_number(m.E()) + "\n";
    out += "F = " + format_number(m.F()) + "\n";
    out += "G = " + format_number(m.G()) + "\n";
    if (spec.psi()) out += "psi = " + spec.psi()->to_string() + "\n";
    return out;
}

}  // namespace lorcyl

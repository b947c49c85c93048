#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

#include "tsrkit/errors.hpp"
#include "tsrkit/tsr.hpp"

namespace tsrkit {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::size_t parse_size(std::string_view key, std::string_view value) {
    std::size_t out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size() || out == 0) {
        throw ParseError(std::string(key) + " must be a positive integer, got '" + std::string(value) + "'");
    }
    return out;
}

constexpr std::string_view kCompanionPrefix = "companion:";

}  // namespace

SpecFile parse_spec_file(std::string_view text) {
    std::map<std::string, std::string, std::less<>> fields;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError("line " + std::to_string(line_no) + ": expected key=value");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key != "m" && key != "n" && key != "T" && key != "S" && key != "Q") {
            throw ParseError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
        if (!fields.emplace(key, value).second) {
            throw ParseError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        }
    }
    for (const char* required : {"m", "n", "T", "S"}) {
        if (!fields.contains(required)) throw ParseError(std::string("spec file is missing '") + required + "='");
    }

    const std::size_t m = parse_size("m", fields["m"]);
    const std::size_t n = parse_size("n", fields["n"]);
    if (m > 64) throw ParseError("m must be at most 64");

    const std::string_view t_text = fields["T"];
    MatF2 t(1);
    if (t_text.starts_with(kCompanionPrefix)) {
        const PolyF2 f = PolyF2::from_hex(t_text.substr(kCompanionPrefix.size()));
        if (f.degree() != m) throw ParseError("companion polynomial must have degree m = " + std::to_string(m));
        t = companion(f);
    } else {
        t = MatF2::from_hex_rows(t_text);
        if (t.dim() != m) throw ParseError("T lists " + std::to_string(t.dim()) + " rows, expected m = " + std::to_string(m));
    }
    const PolyF2 taps = PolyF2::from_hex(fields["S"]);
    if (!taps.is_zero() && taps.deg() >= n) throw ParseError("S has taps beyond a_{n-1}");

    std::optional<PolyF2> q;
    if (auto it = fields.find("Q"); it != fields.end()) q = PolyF2::from_hex(it->second);
    return SpecFile{TsrSpec(m, n, std::move(t), taps), std::move(q)};
}

TsrSpec parse_spec(std::string_view text) {
    SpecFile file = parse_spec_file(text);
    if (file.recorded_q) {
        const PolyF2 actual = tsr_charpoly(file.spec);
        if (actual != *file.recorded_q) {
            throw ParseError("recorded Q=" + file.recorded_q->to_hex() + " does not match recomputed " + actual.to_hex());
        }
    }
    return std::move(file.spec);
}

std::string format_spec(const TsrSpec& spec, bool include_q) {
    std::ostringstream os;
    os << "m=" << spec.m() << '\n';
    os << "n=" << spec.n() << '\n';
    os << "T=" << spec.t().to_hex_rows() << '\n';
    os << "S=" << spec.taps().to_hex() << '\n';
    if (include_q) os << "Q=" << tsr_charpoly(spec).to_hex() << '\n';
    return os.str();
}

}  // namespace tsrkit

#include "cqp/cli/state_literal.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace cqp::cli {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

core::cx parse_complex(const std::string& raw) {
    std::string s = trim(raw);
    if (s.empty()) throw std::invalid_argument("empty amplitude");
    const char* p = s.c_str();
    char* end = nullptr;
    double v1 = std::strtod(p, &end);
    if (end == p) throw std::invalid_argument("malformed amplitude '" + s + "'");
    if (*end == '\0') return core::cx(v1, 0.0);
    if (*end == 'i' && end[1] == '\0') return core::cx(0.0, v1);
    if (*end == '+' || *end == '-') {
        char* end2 = nullptr;
        double v2 = std::strtod(end, &end2);
        if (end2 == end || *end2 != 'i' || end2[1] != '\0')
            throw std::invalid_argument("malformed complex amplitude '" + s + "'");
        return core::cx(v1, v2);
    }
    throw std::invalid_argument("malformed amplitude '" + s + "'");
}

long parse_index(const std::string& raw) {
    std::string s = trim(raw);
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("malformed basis index '" + s + "'");
    return std::stol(s);
}

} // namespace

core::QuantumState parse_state_literal(const std::string& text, int d,
                                       const std::string& name) {
    if (d < 2) throw std::invalid_argument("state literal needs dimension >= 2");
    std::string s = trim(text);
    std::vector<core::cx> amps(static_cast<std::size_t>(d), core::cx(0.0, 0.0));

    if (!s.empty() && s.front() == '|') {
        if (s.back() != '>')
            throw std::invalid_argument("ket literal must end with '>': " + s);
        long k = parse_index(s.substr(1, s.size() - 2));
        if (k >= d)
            throw std::invalid_argument("basis index " + std::to_string(k) +
                                        " is outside dimension " + std::to_string(d));
        amps[static_cast<std::size_t>(k)] = core::cx(1.0, 0.0);
        return core::QuantumState(d, {name}, std::move(amps));
    }

    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string entry =
            comma == std::string::npos ? s.substr(pos) : s.substr(pos, comma - pos);
        std::size_t colon = entry.rfind(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("state entry '" + entry +
                                        "' is not amp:index");
        core::cx amp = parse_complex(entry.substr(0, colon));
        long idx = parse_index(entry.substr(colon + 1));
        if (idx >= d)
            throw std::invalid_argument("basis index " + std::to_string(idx) +
                                        " is outside dimension " + std::to_string(d));
        amps[static_cast<std::size_t>(idx)] = amp;
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }

    double n2 = 0.0;
    for (const auto& a : amps) n2 += std::norm(a);
    double norm = std::sqrt(n2);
    if (std::abs(norm - 1.0) > 1e-6)
        throw std::invalid_argument("state literal has norm " +
                                    std::to_string(norm) +
                                    ", outside the 1e-6 tolerance");
    for (auto& a : amps) a /= norm;
    return core::QuantumState(d, {name}, std::move(amps));
}

} // namespace cqp::cli

#include "cqp/harness/json.hpp"

#include <cstdio>

#include "cqp/lang/pretty.hpp"

namespace cqp::harness {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (unsigned char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
            if (c < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += static_cast<char>(c);
            }
        }
    }
    return out;
}

std::string json_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    std::string s = buf;
    // keep it a JSON number even for integral values
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    if (s == "inf") s = "1e308";
    if (s == "-inf") s = "-1e308";
    return s;
}

namespace {

std::string q(const std::string& s) { return "\"" + json_escape(s) + "\""; }

std::string value_json(const sem::Value& v) {
    if (v.kind == sem::Value::Kind::Int) return std::to_string(v.num);
    return q(v.name);
}

std::string tuple_json(const sem::ValueTuple& t) {
    std::string out = "[";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += ",";
        out += value_json(t[i]);
    }
    return out + "]";
}

std::string amplitudes_json(const core::QuantumState& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += "[" + json_double(s.amp(i).real()) + "," +
               json_double(s.amp(i).imag()) + "]";
    }
    return out + "]";
}

std::string names_json(const std::vector<std::string>& names) {
    std::string out = "[";
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ",";
        out += q(names[i]);
    }
    return out + "]";
}

std::string successor_json(const sem::Successor& s);

std::string weights_json(const sem::Successor& s) {
    std::string out = "[";
    bool first = true;
    if (const auto* cfg = std::get_if<sem::Configuration>(&s)) {
        for (const auto& c : cfg->components()) {
            if (!first) out += ",";
            first = false;
            out += json_double(c.weight);
        }
    } else {
        for (const auto& [p, c] : std::get<sem::ProbDistribution>(s).branches) {
            if (!first) out += ",";
            first = false;
            out += json_double(p);
        }
    }
    return out + "]";
}

} // namespace

std::string label_to_json(const sem::TransitionLabel& label) {
    using Kind = sem::TransitionLabel::Kind;
    std::string out = "{";
    switch (label.kind) {
    case Kind::Tau:
        out += "\"detail\":" + q(label.detail) + ",\"kind\":\"tau\"";
        break;
    case Kind::Input:
        out += "\"channel\":" + q(label.chan) + ",\"kind\":\"input\",\"values\":" +
               tuple_json(label.tuples.at(0));
        break;
    case Kind::Output: {
        out += "\"channel\":" + q(label.chan) + ",\"kind\":\"output\",\"values\":[";
        for (std::size_t i = 0; i < label.tuples.size(); ++i) {
            if (i) out += ",";
            out += tuple_json(label.tuples[i]);
        }
        out += "]";
        break;
    }
    case Kind::ProbBranch:
        out += "\"detail\":" + q(label.detail) +
               ",\"kind\":\"prob\",\"prob\":" + json_double(label.prob);
        break;
    }
    return out + "}";
}

std::string config_to_json(const sem::Configuration& cfg) {
    std::string out = "{\"components\":[";
    for (std::size_t i = 0; i < cfg.components().size(); ++i) {
        const auto& c = cfg.components()[i];
        if (i) out += ",";
        out += "{\"sigma\":{\"amplitudes\":" + amplitudes_json(c.sigma) +
               ",\"names\":" + names_json(c.sigma.qudit_names()) + "}";
        out += ",\"values\":[";
        for (std::size_t vi = 0; vi < c.values.size(); ++vi) {
            if (vi) out += ",";
            out += std::to_string(c.values[vi]);
        }
        out += "],\"weight\":" + json_double(c.weight) + "}";
    }
    out += "],\"dimension\":" + std::to_string(cfg.dimension());
    out += ",\"kind\":\"configuration\"";
    out += ",\"omega\":" + names_json(cfg.omega());
    out += ",\"placeholders\":" + names_json(cfg.abstracted());
    out += ",\"term\":" + q(lang::pretty_term(cfg.term())) + "}";
    return out;
}

namespace {

std::string successor_json(const sem::Successor& s) {
    if (const auto* cfg = std::get_if<sem::Configuration>(&s))
        return config_to_json(*cfg);
    const auto& dist = std::get<sem::ProbDistribution>(s);
    std::string out = "{\"branches\":[";
    for (std::size_t i = 0; i < dist.branches.size(); ++i) {
        if (i) out += ",";
        out += "{\"configuration\":" + config_to_json(dist.branches[i].second) +
               ",\"probability\":" + json_double(dist.branches[i].first) + "}";
    }
    return out + "],\"kind\":\"distribution\"}";
}

} // namespace

std::string trace_to_json(const Trace& trace) {
    std::string out = "{\"dimension\":" + std::to_string(trace.dimension);
    out += ",\"final\":" + successor_json(trace.final_state());
    out += ",\"status\":" + q(trace_status_name(trace.status));
    out += ",\"steps\":[";
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& s = trace.steps[i];
        if (i) out += ",";
        out += "{\"digest\":" + q(s.digest) + ",\"label\":" + label_to_json(s.label) +
               ",\"weights\":" + weights_json(s.state) + "}";
    }
    out += "]}";
    return out;
}

std::string report_to_json(const VerificationReport& report) {
    std::string out = "{\"branches\":[";
    for (std::size_t i = 0; i < report.branches.size(); ++i) {
        const auto& b = report.branches[i];
        if (i) out += ",";
        out += "{\"expected\":" + q(b.expected) +
               ",\"expected_weight\":" + json_double(b.expected_weight) +
               ",\"fidelity\":" + json_double(b.fidelity) + ",\"id\":" + q(b.id) +
               ",\"observed\":" + q(b.observed) +
               ",\"pass\":" + (b.pass ? "true" : "false") +
               ",\"weight\":" + json_double(b.weight) + "}";
    }
    out += "],\"dimension\":" + std::to_string(report.dimension);
    if (!report.notes.empty()) {
        out += ",\"notes\":{";
        bool first = true;
        for (const auto& [k, v] : report.notes) { // std::map iterates sorted
            if (!first) out += ",";
            first = false;
            out += q(k) + ":" + q(v);
        }
        out += "}";
    }
    out += ",\"pass\":";
    out += report.pass ? "true" : "false";
    out += ",\"protocol\":" + q(report.protocol) + "}";
    return out;
}

std::string trace_to_text(const Trace& trace) {
    std::string out = "dimension " + std::to_string(trace.dimension) + "\n";
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        out += std::to_string(i) + ": " + sem::label_to_string(trace.steps[i].label);
        out += "  [" + trace.steps[i].digest + "]\n";
    }
    out += std::string("status: ") + trace_status_name(trace.status) + "\n";
    if (!trace.residual.empty()) out += "residual: " + trace.residual + "\n";
    if (const auto* cfg = std::get_if<sem::Configuration>(&trace.final_state())) {
        out += "final: " + cfg->to_string() + "\n";
    } else {
        const auto& dist = std::get<sem::ProbDistribution>(trace.final_state());
        out += "final: distribution over " + std::to_string(dist.branches.size()) +
               " branch(es)\n";
    }
    return out;
}

std::string report_to_text(const VerificationReport& report) {
    std::string out = report.summary() + "\n";
    for (const auto& b : report.branches) {
        out += std::string("  [") + (b.pass ? "ok" : "FAIL") + "] " + b.id +
               ": expected " + b.expected + ", observed " + b.observed + "\n";
    }
    for (const auto& [k, v] : report.notes) out += "  " + k + ": " + v + "\n";
    return out;
}

} // namespace cqp::harness

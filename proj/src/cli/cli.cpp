#include "cqp/cli/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "cqp/cli/state_literal.hpp"
#include "cqp/harness/json.hpp"
#include "cqp/lang/parse.hpp"
#include "cqp/lang/pretty.hpp"
#include "cqp/lang/typecheck.hpp"

namespace cqp::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitError = 2;

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const char* kUsage =
    "usage: cqpd <command> [arguments]\n"
    "\n"
    "commands:\n"
    "  check <file>                 parse and typecheck a .cqp file\n"
    "  run <file|teleport|sdc>      execute under a seeded schedule\n"
    "  trace <file|teleport|sdc>    execute and emit the trace (JSON)\n"
    "  enumerate <file|teleport|sdc>  explore every interleaving\n"
    "  verify <teleport|sdc>        run a protocol against its oracle\n"
    "\n"
    "flags:\n"
    "  -d, --dimension <int>   qudit dimension (default 2)\n"
    "  --seed <int>            scheduler / random-input seed\n"
    "  --in name=value         bind an external input (value or state)\n"
    "                          states: |k> or amp:index,... with a+bi amps\n"
    "  --format text|json      output format\n"
    "  --depth <int>           transition limit (default 256)\n";

long parse_int(const std::string& flag, const std::string& text) {
    try {
        std::size_t used = 0;
        long v = std::stol(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw CliError("flag " + flag + " needs an integer, got '" + text + "'");
    }
}

CliConfig parse_args(int argc, const char* const* argv) {
    CliConfig cfg;
    std::vector<std::string> positional;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        auto next = [&](const std::string& flag) -> std::string {
            if (i + 1 >= argc) throw CliError("flag " + flag + " needs a value");
            return argv[++i];
        };
        if (arg == "-d" || arg == "--dimension") {
            cfg.dimension = static_cast<int>(parse_int(arg, next(arg)));
        } else if (arg == "--seed") {
            cfg.seed = static_cast<std::uint64_t>(parse_int(arg, next(arg)));
        } else if (arg == "--depth") {
            cfg.depth = static_cast<int>(parse_int(arg, next(arg)));
        } else if (arg == "--format") {
            cfg.format = next(arg);
            if (cfg.format != "text" && cfg.format != "json")
                throw CliError("--format must be text or json, got '" + cfg.format +
                               "'");
        } else if (arg == "--in") {
            std::string binding = next(arg);
            std::size_t eq = binding.find('=');
            if (eq == std::string::npos || eq == 0)
                throw CliError("--in needs name=value, got '" + binding + "'");
            cfg.inputs[binding.substr(0, eq)] = binding.substr(eq + 1);
        } else if (arg == "-h" || arg == "--help") {
            cfg.command = "help";
            return cfg;
        } else if (!arg.empty() && arg[0] == '-') {
            throw CliError("unknown flag '" + arg + "'");
        } else {
            positional.push_back(std::move(arg));
        }
    }
    if (positional.empty()) throw CliError("no command given");
    cfg.command = positional[0];
    if (positional.size() > 1) cfg.target = positional[1];
    if (positional.size() > 2)
        throw CliError("unexpected argument '" + positional[2] + "'");
    return cfg;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError("cannot read file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

lang::Program load_program(const CliConfig& cfg) {
    std::string source = harness::is_builtin(cfg.target)
                             ? harness::builtin_source(cfg.target)
                             : read_file(cfg.target);
    lang::Program prog = lang::parse(source);
    auto diags = lang::typecheck(prog);
    if (!diags.empty()) {
        for (const auto& d : diags)
            std::cerr << cfg.target << ":" << lang::diagnostic_to_string(d) << "\n";
        throw CliError("typecheck failed with " + std::to_string(diags.size()) +
                       " diagnostic(s)");
    }
    return prog;
}

sem::EnvironmentInputs make_env(const CliConfig& cfg) {
    sem::EnvironmentInputs env;
    for (const auto& [name, raw] : cfg.inputs) {
        bool looks_like_state =
            !raw.empty() && (raw[0] == '|' || raw.find(':') != std::string::npos);
        if (looks_like_state) {
            env.states[name] =
                parse_state_literal(raw, cfg.dimension, name).amplitudes();
        } else {
            try {
                std::size_t used = 0;
                long v = std::stol(raw, &used);
                if (used != raw.size()) throw std::invalid_argument(raw);
                env.vals[name] = v;
            } catch (const std::exception&) {
                throw CliError("--in " + name + "=" + raw +
                               " is neither an integer nor a state literal");
            }
        }
    }
    return env;
}

int cmd_check(const CliConfig& cfg) {
    if (cfg.target.empty()) throw CliError("check needs a file");
    lang::Program prog = lang::parse(read_file(cfg.target));
    auto diags = lang::typecheck(prog);
    for (const auto& d : diags)
        std::cerr << cfg.target << ":" << lang::diagnostic_to_string(d) << "\n";
    std::cout << diags.size() << " diagnostics\n";
    return diags.empty() ? kExitOk : kExitError;
}

harness::Schedule schedule_for(const CliConfig& cfg) {
    return harness::Schedule::seeded(cfg.seed, cfg.depth);
}

int cmd_run(const CliConfig& cfg, bool default_json) {
    if (cfg.target.empty()) throw CliError("run needs a file or builtin name");
    lang::Program prog = load_program(cfg);
    harness::Trace trace =
        harness::run(prog, cfg.dimension, make_env(cfg), schedule_for(cfg));
    bool json = cfg.format.empty() ? default_json : cfg.format == "json";
    std::cout << (json ? harness::trace_to_json(trace)
                       : harness::trace_to_text(trace));
    if (json) std::cout << "\n";
    return kExitOk;
}

int cmd_enumerate(const CliConfig& cfg) {
    if (cfg.target.empty()) throw CliError("enumerate needs a file or builtin name");
    lang::Program prog = load_program(cfg);
    std::vector<harness::Trace> traces =
        harness::enumerate(prog, cfg.dimension, make_env(cfg), cfg.depth);
    bool json = cfg.format.empty() || cfg.format == "json";
    if (json) {
        std::cout << "{\"dimension\":" << cfg.dimension << ",\"traces\":[";
        for (std::size_t i = 0; i < traces.size(); ++i) {
            if (i) std::cout << ",";
            std::cout << harness::trace_to_json(traces[i]);
        }
        std::cout << "]}\n";
    } else {
        std::cout << traces.size() << " trace(s)\n";
        for (std::size_t i = 0; i < traces.size(); ++i) {
            std::cout << "--- trace " << i << "\n"
                      << harness::trace_to_text(traces[i]);
        }
    }
    return kExitOk;
}

int cmd_verify(const CliConfig& cfg) {
    if (cfg.target != "teleport" && cfg.target != "sdc")
        throw CliError("verify accepts only the builtin protocols teleport and "
                       "sdc");
    harness::VerificationReport report;
    if (cfg.target == "teleport") {
        core::QuantumState psi =
            cfg.inputs.count("x")
                ? parse_state_literal(cfg.inputs.at("x"), cfg.dimension, "x")
                : harness::haar_random_state(cfg.dimension, cfg.seed);
        report = harness::verify_teleport(cfg.dimension, psi);
    } else {
        long a = 0, b = 0;
        if (cfg.inputs.count("a")) a = parse_int("--in a", cfg.inputs.at("a"));
        if (cfg.inputs.count("b")) b = parse_int("--in b", cfg.inputs.at("b"));
        report = harness::verify_sdc(cfg.dimension, a, b);
    }
    bool json = cfg.format.empty() || cfg.format == "json";
    std::cout << (json ? harness::report_to_json(report)
                       : harness::report_to_text(report));
    if (json) std::cout << "\n";
    return report.pass ? kExitOk : kExitVerifyFail;
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    try {
        CliConfig cfg = parse_args(argc, argv);
        if (cfg.command == "help") {
            std::cout << kUsage;
            return kExitOk;
        }
        if (cfg.dimension < 2) throw CliError("dimension must be >= 2");
        if (cfg.depth < 1) throw CliError("depth must be >= 1");
        if (cfg.command == "check") return cmd_check(cfg);
        if (cfg.command == "run") return cmd_run(cfg, /*default_json=*/false);
        if (cfg.command == "trace") return cmd_run(cfg, /*default_json=*/true);
        if (cfg.command == "enumerate") return cmd_enumerate(cfg);
        if (cfg.command == "verify") return cmd_verify(cfg);
        throw CliError("unknown command '" + cfg.command + "'");
    } catch (const lang::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}

} // namespace cqp::cli

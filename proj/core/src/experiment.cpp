#include "qwalk/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "qwalk/optics.hpp"
#include "qwalk/povm.hpp"
#include "qwalk/version.hpp"

namespace qwalk {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& field, const std::string& what) {
    throw std::invalid_argument("config field '" + field + "': " + what);
}

template <typename T>
T get_or(const json& j, const std::string& field, T fallback) {
    if (!j.contains(field)) return fallback;
    try {
        return j.at(field).get<T>();
    } catch (const json::exception& e) {
        config_error(field, e.what());
    }
}

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

json dist_to_json(const PositionDistribution& d) {
    json out = json::object();
    for (const auto& [x, p] : d) out[std::to_string(x)] = p;
    return out;
}

json mat_to_json(const Mat2& m) {
    json out = json::array();
    for (int r = 0; r < 2; ++r) {
        json row = json::array();
        for (int c = 0; c < 2; ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        out.push_back(row);
    }
    return out;
}

Mat2 mat_from_json(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2) config_error(field, "expected a 2x2 matrix");
    Mat2 m;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            const auto& cell = j.at(static_cast<std::size_t>(r)).at(static_cast<std::size_t>(c));
            m(r, c) = cplx(cell.at(0).get<double>(), cell.at(1).get<double>());
        }
    return m;
}

void write_file(const std::filesystem::path& path, const std::string& content,
                std::vector<std::string>& files) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << content;
    files.push_back(path.string());
}

std::string distribution_csv(const PositionDistribution& theory,
                             const std::map<int, std::int64_t>* counts,
                             const PositionDistribution* sampled) {
    std::ostringstream os;
    os << "position,probability";
    if (sampled) os << ",sampled,counts";
    os << '\n';
    for (const auto& [x, p] : theory) {
        os << x << ',' << fmt6(p);
        if (sampled) {
            const auto is = sampled->find(x);
            const auto ic = counts->find(x);
            os << ',' << fmt6(is == sampled->end() ? 0.0 : is->second) << ','
               << (ic == counts->end() ? 0 : ic->second);
        }
        os << '\n';
    }
    return os.str();
}

WalkSpec protocol_spec(const ExperimentConfig& cfg) {
    if (cfg.protocol == Protocol::usd) {
        WalkSpec spec = usd_schedule(cfg.usd.phi_deg);
        spec.initial_coin = cfg.usd.input_coin();
        return spec;
    }
    return sic_schedule(cfg.sic_index);
}

}  // namespace

const char* command_name(CommandKind c) {
    switch (c) {
        case CommandKind::simulate: return "simulate";
        case CommandKind::usd: return "usd";
        case CommandKind::sic: return "sic";
        case CommandKind::extract_povm: return "extract-povm";
        case CommandKind::compile: return "compile";
        case CommandKind::noise: return "noise";
        case CommandKind::tomography: return "tomography";
        case CommandKind::sweep: return "sweep";
    }
    throw std::logic_error("unreachable");
}

CommandKind command_from_name(const std::string& name) {
    for (CommandKind c : {CommandKind::simulate, CommandKind::usd, CommandKind::sic,
                          CommandKind::extract_povm, CommandKind::compile, CommandKind::noise,
                          CommandKind::tomography, CommandKind::sweep})
        if (name == command_name(c)) return c;
    config_error("command", "unknown command '" + name + "'");
}

nlohmann::json walk_spec_to_json(const WalkSpec& spec) {
    json j;
    j["steps"] = spec.steps;
    j["initial_position"] = spec.initial_position;
    j["initial_coin"] = {{spec.initial_coin.up.real(), spec.initial_coin.up.imag()},
                         {spec.initial_coin.down.real(), spec.initial_coin.down.imag()}};
    json coins = json::array();
    for (const auto& [key, m] : spec.schedule.entries())
        coins.push_back({{"step", key.first}, {"position", key.second}, {"matrix", mat_to_json(m)}});
    j["coins"] = coins;
    return j;
}

WalkSpec walk_spec_from_json(const nlohmann::json& j) {
    WalkSpec spec;
    spec.steps = get_or<int>(j, "steps", 0);
    spec.initial_position = get_or<int>(j, "initial_position", 0);
    if (j.contains("initial_coin")) {
        const auto& c = j.at("initial_coin");
        spec.initial_coin = {cplx(c.at(0).at(0).get<double>(), c.at(0).at(1).get<double>()),
                             cplx(c.at(1).at(0).get<double>(), c.at(1).at(1).get<double>())};
    }
    for (const auto& entry : get_or<json>(j, "coins", json::array())) {
        try {
            spec.schedule.set(entry.at("step").get<int>(), entry.at("position").get<int>(),
                              mat_from_json(entry.at("matrix"), "walk.coins.matrix"));
        } catch (const json::exception& e) {
            config_error("walk.coins", e.what());
        }
    }
    return spec;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    ExperimentConfig cfg;
    cfg.command = command_from_name(get_or<std::string>(j, "command", "usd"));
    cfg.seed = get_or<std::uint64_t>(j, "seed", 0);
    cfg.out_dir = get_or<std::string>(j, "out", ".");

    if (j.contains("usd")) {
        const json& u = j.at("usd");
        cfg.usd.phi_deg = get_or<double>(u, "phi_deg", 45.0);
        const std::string input = get_or<std::string>(u, "input", "plus");
        if (input == "plus")
            cfg.usd.input = UsdInput::plus;
        else if (input == "minus")
            cfg.usd.input = UsdInput::minus;
        else if (input == "superposition")
            cfg.usd.input = UsdInput::superposition;
        else
            config_error("usd.input", "expected plus|minus|superposition");
        cfg.usd.a = get_or<double>(u, "a", 1.0);
        cfg.usd.b = get_or<double>(u, "b", 1.0);
    }
    if (j.contains("sic")) cfg.sic_index = get_or<int>(j.at("sic"), "index", 1);
    if (j.contains("protocol")) {
        const std::string p = j.at("protocol").get<std::string>();
        if (p == "usd")
            cfg.protocol = Protocol::usd;
        else if (p == "sic")
            cfg.protocol = Protocol::sic;
        else
            config_error("protocol", "expected usd|sic");
    }
    if (j.contains("sweep")) {
        const json& s = j.at("sweep");
        cfg.sweep.phi_start_deg = get_or<double>(s, "phi_start_deg", 45.0);
        cfg.sweep.phi_stop_deg = get_or<double>(s, "phi_stop_deg", 90.0);
        cfg.sweep.phi_step_deg = get_or<double>(s, "phi_step_deg", 9.0);
    }
    if (j.contains("noise")) {
        const json& n = j.at("noise");
        NoiseParams p;
        p.visibility = get_or<double>(n, "visibility", 0.992);
        p.angle_jitter_deg = get_or<double>(n, "angle_jitter_deg", 0.0);
        p.expected_counts = get_or<double>(n, "expected_counts", 1e4);
        p.seed = cfg.seed;
        p.validate();
        cfg.noise = p;
    }
    cfg.trials = get_or<int>(j, "trials", 200);
    if (j.contains("walk")) cfg.walk = walk_spec_from_json(j.at("walk"));
    if (j.contains("tomography")) {
        const json& rows = j.at("tomography").at("rows");
        if (!rows.is_array() || rows.size() != 4)
            config_error("tomography.rows", "expected four outcome rows");
        std::array<SicOutcome, 4> parsed;
        for (std::size_t i = 0; i < 4; ++i) {
            const json& r = rows.at(i);
            PositionDistribution dist;
            for (const char* key : {"P0", "P2", "P4", "P6"}) {
                if (!r.contains(key)) config_error(std::string("tomography.rows.") + key, "missing");
                dist[key[1] - '0'] = r.at(key).get<double>();
            }
            parsed[i] = SicOutcome::from_positions(dist);
        }
        cfg.tomo_rows = parsed;
    }
    return cfg;
}

nlohmann::json ExperimentConfig::to_json() const {
    json j;
    j["command"] = command_name(command);
    j["seed"] = seed;
    j["out"] = out_dir;

    const auto usd_json = [&] {
        const char* in = usd.input == UsdInput::plus    ? "plus"
                         : usd.input == UsdInput::minus ? "minus"
                                                        : "superposition";
        json u{{"phi_deg", usd.phi_deg}, {"input", in}};
        if (usd.input == UsdInput::superposition) {
            u["a"] = usd.a;
            u["b"] = usd.b;
        }
        return u;
    };

    switch (command) {
        case CommandKind::usd:
            j["usd"] = usd_json();
            break;
        case CommandKind::sic:
            j["sic"] = {{"index", sic_index}};
            break;
        case CommandKind::extract_povm:
        case CommandKind::compile:
        case CommandKind::noise:
            j["protocol"] = protocol == Protocol::usd ? "usd" : "sic";
            if (protocol == Protocol::usd)
                j["usd"] = usd_json();
            else
                j["sic"] = {{"index", sic_index}};
            if (command == CommandKind::noise) j["trials"] = trials;
            break;
        case CommandKind::sweep:
            j["sweep"] = {{"phi_start_deg", sweep.phi_start_deg},
                          {"phi_stop_deg", sweep.phi_stop_deg},
                          {"phi_step_deg", sweep.phi_step_deg}};
            break;
        case CommandKind::simulate:
            if (walk) j["walk"] = walk_spec_to_json(*walk);
            break;
        case CommandKind::tomography:
            if (tomo_rows) {
                json rows = json::array();
                for (const auto& row : *tomo_rows)
                    rows.push_back({{"P6", row.p[0]}, {"P4", row.p[1]}, {"P0", row.p[2]}, {"P2", row.p[3]}});
                j["tomography"] = {{"rows", rows}};
            }
            break;
    }
    if (noise)
        j["noise"] = {{"visibility", noise->visibility},
                      {"angle_jitter_deg", noise->angle_jitter_deg},
                      {"expected_counts", noise->expected_counts}};
    return j;
}

std::string ExperimentConfig::config_hash() const {
    const std::size_t h = std::hash<std::string>{}(to_json().dump());
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016zx", h);
    return buf;
}

ResultRecord run(const ExperimentConfig& cfg) {
    namespace fs = std::filesystem;
    const fs::path out_dir(cfg.out_dir);
    fs::create_directories(out_dir);

    ResultRecord result;
    json& rec = result.record;
    rec["version"] = kVersion;
    rec["command"] = command_name(cfg.command);
    rec["config"] = cfg.to_json();
    rec["config_hash"] = cfg.config_hash();
    rec["seed"] = cfg.seed;

    const auto maybe_sample = [&](const WalkSpec& spec, const PositionDistribution& theory) {
        if (!cfg.noise) {
            write_file(out_dir / "distribution.csv", distribution_csv(theory, nullptr, nullptr),
                       result.files_written);
            return;
        }
        NoiseParams p = *cfg.noise;
        p.seed = cfg.seed;
        const PositionDistribution noisy = noisy_evolve(spec, p).position_distribution();
        const TrialResult trial = sample_counts(noisy, p, &theory);
        rec["sampled"] = dist_to_json(trial.sampled);
        rec["d"] = trial.d;
        write_file(out_dir / "distribution.csv",
                   distribution_csv(theory, &trial.counts, &trial.sampled), result.files_written);
    };

    switch (cfg.command) {
        case CommandKind::usd: {
            cfg.usd.validate();
            WalkSpec spec = usd_schedule(cfg.usd.phi_deg);
            spec.initial_coin = cfg.usd.input_coin();
            const PositionDistribution theory = position_distribution(evolve(spec));
            const UsdOutcome outcome = usd_expected(cfg.usd);
            rec["theory"] = dist_to_json(theory);
            rec["eta_err"] = usd_eta_err(cfg.usd.phi_deg);
            rec["outcome"] = {{"P(1)", outcome.p_conclusive_plus},
                              {"P(-1)", outcome.p_conclusive_minus},
                              {"P(3)", outcome.p_inconclusive}};
            const double ratio = outcome.conclusive_ratio();
            rec["conclusive_ratio"] = std::isfinite(ratio) ? json(ratio) : json("infinity");
            maybe_sample(spec, theory);
            break;
        }
        case CommandKind::sic: {
            const WalkSpec spec = sic_schedule(cfg.sic_index);
            PositionDistribution theory = sic_expected(cfg.sic_index);
            theory[sic_forbidden_position(cfg.sic_index)] = 0.0;
            rec["theory"] = dist_to_json(theory);
            rec["forbidden_position"] = sic_forbidden_position(cfg.sic_index);
            maybe_sample(spec, theory);
            break;
        }
        case CommandKind::extract_povm: {
            const WalkSpec spec = protocol_spec(cfg);
            const KrausSet kraus = kraus_from_walk(spec.schedule, spec.steps, spec.initial_position);
            rec["completeness_residual"] = kraus.completeness_residual();
            json elements = json::array();
            for (const PovmElement& e : povm_from_kraus(kraus))
                elements.push_back({{"position", e.position}, {"matrix", mat_to_json(e.matrix)}});
            rec["element_count"] = elements.size();
            write_file(out_dir / "povm.json", json{{"elements", elements}}.dump(2) + "\n",
                       result.files_written);
            break;
        }
        case CommandKind::compile: {
            const WalkSpec spec = protocol_spec(cfg);
            const WaveplatePlan plan = plan_placement(spec.schedule, spec.initial_position);
            rec["plate_count"] = plan.plate_count();
            write_file(out_dir / "plan.txt", plan.export_text(), result.files_written);
            break;
        }
        case CommandKind::noise: {
            WalkSpec spec = protocol_spec(cfg);
            NoiseParams p = cfg.noise.value_or(NoiseParams{});
            p.seed = cfg.seed;
            const ErrorBudget budget = error_budget(spec, p, cfg.trials);
            rec["median_d"] = budget.median_d;
            rec["p90_d"] = budget.p90_d;
            rec["mean_fidelity"] = budget.mean_fidelity;
            std::ostringstream os;
            os << "trial,d\n";
            for (std::size_t t = 0; t < budget.per_trial_d.size(); ++t)
                os << t << ',' << fmt6(budget.per_trial_d[t]) << '\n';
            write_file(out_dir / "trials.csv", os.str(), result.files_written);
            break;
        }
        case CommandKind::tomography: {
            if (!cfg.tomo_rows) config_error("tomography.rows", "required for the tomography command");
            std::ostringstream os;
            os << "state,re00,re01,re10,re11,im00,im01,im10,im11\n";
            json mats = json::array();
            for (std::size_t i = 0; i < 4; ++i) {
                const Mat2 rho = reconstruct((*cfg.tomo_rows)[i]);
                os << (i + 1);
                for (int r = 0; r < 2; ++r)
                    for (int c = 0; c < 2; ++c) os << ',' << fmt6(rho(r, c).real());
                for (int r = 0; r < 2; ++r)
                    for (int c = 0; c < 2; ++c) os << ',' << fmt6(rho(r, c).imag());
                os << '\n';
                mats.push_back(mat_to_json(rho));
            }
            const auto fids = fidelity_report(*cfg.tomo_rows);
            rec["fidelities"] = fids;
            rec["density_matrices"] = mats;
            write_file(out_dir / "tomography.csv", os.str(), result.files_written);
            break;
        }
        case CommandKind::simulate: {
            if (!cfg.walk) config_error("walk", "required for the simulate command");
            const PositionDistribution theory = position_distribution(evolve(*cfg.walk));
            rec["theory"] = dist_to_json(theory);
            maybe_sample(*cfg.walk, theory);
            break;
        }
        case CommandKind::sweep: {
            const SweepRange& r = cfg.sweep;
            if (!(r.phi_step_deg > 0.0) || r.phi_stop_deg < r.phi_start_deg)
                config_error("sweep", "empty phi range");
            std::ostringstream os;
            os << "phi_deg,eta_err_theory,eta_err_sampled\n";
            int rows = 0;
            for (double phi = r.phi_start_deg; phi <= r.phi_stop_deg + 1e-9; phi += r.phi_step_deg) {
                const double clamped = std::min(phi, 90.0);
                WalkSpec spec = usd_schedule(clamped);
                spec.initial_coin = phi_plus(clamped);
                NoiseParams p = cfg.noise.value_or(NoiseParams{});
                p.seed = cfg.seed + static_cast<std::uint64_t>(rows) * 0x9e3779b97f4a7c15ULL;
                const PositionDistribution noisy = noisy_evolve(spec, p).position_distribution();
                const TrialResult trial = sample_counts(noisy, p, nullptr);
                const auto it = trial.sampled.find(3);
                const double eta_sampled = it == trial.sampled.end() ? 0.0 : it->second;
                os << fmt6(clamped) << ',' << fmt6(usd_eta_err(clamped)) << ',' << fmt6(eta_sampled)
                   << '\n';
                ++rows;
            }
            rec["rows"] = rows;
            write_file(out_dir / "sweep.csv", os.str(), result.files_written);
            break;
        }
    }

    write_file(out_dir / "result.json", rec.dump(2) + "\n", result.files_written);
    return result;
}

}  // namespace qwalk

// Command-line front end for the quantum-walk POVM toolkit.
//
// Configuration comes from an optional JSON file (--config) with flag
// overrides on top; flags win. Every command writes a result record
// (result.json) plus its tables under --out.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qwalk/experiment.hpp"
#include "qwalk/version.hpp"

namespace {

using nlohmann::json;

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open config file: " + path);
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config parse error in " + path + ": " + e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"One-dimensional quantum-walk POVM simulator"};
    app.set_version_flag("--version", qwalk::kVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false, out_set = false;
    app.add_option("--config", config_path, "JSON configuration file")->expected(1);
    app.add_option_function<std::uint64_t>(
           "--seed", [&](std::uint64_t v) { seed = v; seed_set = true; }, "RNG seed");
    app.add_option_function<std::string>(
           "--out", [&](const std::string& v) { out_dir = v; out_set = true; }, "output directory");

    double phi = 45.0;
    std::string input = "plus";
    double a = 1.0, b = 1.0;
    int index = 1;
    std::string protocol = "usd";
    int trials = 200;
    double visibility = 0.992, jitter = 0.0, counts = 1e4;
    double phi_start = 45.0, phi_stop = 90.0, phi_step = 9.0;

    const auto add_noise_flags = [&](CLI::App* cmd) {
        cmd->add_option("--visibility", visibility, "interference visibility");
        cmd->add_option("--jitter", jitter, "plate angle jitter std dev (degrees)");
        cmd->add_option("--counts", counts, "expected total coincidence counts");
    };

    auto* usd = app.add_subcommand("usd", "three-step state-discrimination walk");
    usd->add_option("--phi", phi, "state angle phi in degrees");
    usd->add_option("--input", input, "plus|minus|superposition");
    usd->add_option("--a", a, "superposition weight on |phi+>");
    usd->add_option("--b", b, "superposition weight on |phi->");
    add_noise_flags(usd);

    auto* sic = app.add_subcommand("sic", "six-step SIC-POVM walk");
    sic->add_option("--input", index, "input state index 1..4");
    add_noise_flags(sic);

    auto* extract = app.add_subcommand("extract-povm", "Kraus/POVM extraction for a protocol");
    extract->add_option("--protocol", protocol, "usd|sic");
    extract->add_option("--phi", phi, "phi for the usd protocol");
    extract->add_option("--input", index, "input index for the sic protocol");

    auto* compile = app.add_subcommand("compile", "wave-plate plan for a protocol schedule");
    compile->add_option("--protocol", protocol, "usd|sic");
    compile->add_option("--phi", phi, "phi for the usd protocol");
    compile->add_option("--input", index, "input index for the sic protocol");

    auto* noise = app.add_subcommand("noise", "Monte Carlo error budget for a protocol");
    noise->add_option("--protocol", protocol, "usd|sic");
    noise->add_option("--phi", phi, "phi for the usd protocol");
    noise->add_option("--input", index, "input index for the sic protocol");
    noise->add_option("--trials", trials, "number of trials");
    add_noise_flags(noise);

    auto* tomo = app.add_subcommand("tomography", "SIC reconstruction from outcome rows (config)");

    auto* simulate = app.add_subcommand("simulate", "evolve a raw walk spec (config)");
    add_noise_flags(simulate);

    auto* sweep = app.add_subcommand("sweep", "eta_err over a phi grid");
    sweep->add_option("--phi-start", phi_start, "grid start (degrees)");
    sweep->add_option("--phi-stop", phi_stop, "grid stop (degrees)");
    sweep->add_option("--phi-step", phi_step, "grid step (degrees)");
    add_noise_flags(sweep);

    // let --config/--seed/--out appear after the subcommand name
    for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; }))
        sc->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        json cfg = load_config(config_path);
        CLI::App* cmd = app.get_subcommands().front();
        cfg["command"] = cmd->get_name();
        if (seed_set || !cfg.contains("seed")) cfg["seed"] = seed;
        if (out_set || !cfg.contains("out")) cfg["out"] = out_dir.empty() ? "." : out_dir;

        const auto set_if = [&](CLI::App* c, const char* flag, const char* sect, const char* key,
                                json value) {
            if (c->count(flag) > 0 || !cfg.contains(sect) || !cfg[sect].contains(key))
                cfg[sect][key] = std::move(value);
        };
        if (cmd == usd) {
            set_if(usd, "--phi", "usd", "phi_deg", phi);
            set_if(usd, "--input", "usd", "input", input);
            set_if(usd, "--a", "usd", "a", a);
            set_if(usd, "--b", "usd", "b", b);
        } else if (cmd == sic) {
            set_if(sic, "--input", "sic", "index", index);
        } else if (cmd == extract || cmd == compile || cmd == noise) {
            if (cmd->count("--protocol") > 0 || !cfg.contains("protocol")) cfg["protocol"] = protocol;
            set_if(cmd, "--phi", "usd", "phi_deg", phi);
            set_if(cmd, "--input", "sic", "index", index);
            if (cmd == noise && (cmd->count("--trials") > 0 || !cfg.contains("trials")))
                cfg["trials"] = trials;
        } else if (cmd == sweep) {
            set_if(sweep, "--phi-start", "sweep", "phi_start_deg", phi_start);
            set_if(sweep, "--phi-stop", "sweep", "phi_stop_deg", phi_stop);
            set_if(sweep, "--phi-step", "sweep", "phi_step_deg", phi_step);
        }
        (void)tomo;
        (void)simulate;
        const bool has_noise_flags = cmd->get_option_no_throw("--visibility") != nullptr;
        const bool any_noise_flag =
            has_noise_flags && (cmd->count("--visibility") + cmd->count("--jitter") +
                                cmd->count("--counts")) > 0;
        if ((any_noise_flag || cmd == noise) && !cfg.contains("noise"))
            cfg["noise"] = json::object();
        if (has_noise_flags && cfg.contains("noise")) {
            set_if(cmd, "--visibility", "noise", "visibility", visibility);
            set_if(cmd, "--jitter", "noise", "angle_jitter_deg", jitter);
            set_if(cmd, "--counts", "noise", "expected_counts", counts);
        }

        const qwalk::ExperimentConfig config = qwalk::ExperimentConfig::from_json(cfg);
        const qwalk::ResultRecord result = qwalk::run(config);
        for (const std::string& f : result.files_written) std::cout << "wrote " << f << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

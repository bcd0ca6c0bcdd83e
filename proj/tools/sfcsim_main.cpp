#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "sfcsim/batch.hpp"
#include "sfcsim/metrics.hpp"
#include "sfcsim/oracle.hpp"
#include "sfcsim/scenario.hpp"
#include "sfcsim/simulation.hpp"
#include "sfcsim/svg_plot.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

int log_level() {
    const char* env = std::getenv("SFC_SIM_LOG");
    if (env == nullptr) return 1;
    const std::string v(env);
    if (v == "error") return 0;
    if (v == "info") return 1;
    if (v == "debug") return 2;
    return 1;
}

struct CommonOpts {
    std::string scenario_path;
    std::string out_dir = "out";
    std::string format = "csv";
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::uint32_t runs = 0;
    std::string cost_policy;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_out = true) {
    cmd->add_option("--scenario", opts.scenario_path, "Scenario TOML file")
        ->required();
    if (with_out) {
        cmd->add_option("--out", opts.out_dir, "Output directory");
    }
    cmd->add_option("--seed", opts.seed, "Override the scenario seed")
        ->each([&opts](const std::string&) { opts.seed_set = true; });
    cmd->add_option("--runs", opts.runs, "Override the scenario run count");
    cmd->add_option("--cost-policy", opts.cost_policy,
                    "Override the cost policy (remaining_capacity|consumed_load)");
    cmd->add_option("--format", opts.format, "Summary format (csv|json)")
        ->check(CLI::IsMember({"csv", "json"}));
}

// Loads, applies overrides, validates. Returns nullopt after printing the
// error list (exit 1 path).
std::optional<sfcsim::Scenario> load_checked(const CommonOpts& opts) {
    auto load = sfcsim::load_scenario_file(opts.scenario_path);
    if (load.ok()) {
        auto semantic = sfcsim::validate_scenario(load.scenario);
        load.errors.insert(load.errors.end(), semantic.begin(), semantic.end());
    }
    if (!load.ok()) {
        std::cerr << opts.scenario_path << ": " << load.errors.size()
                  << " validation error(s)\n";
        for (const auto& e : load.errors) std::cerr << "  - " << e << "\n";
        return std::nullopt;
    }
    sfcsim::Scenario scenario = std::move(load.scenario);
    if (opts.seed_set) scenario.seed = opts.seed;
    if (opts.runs > 0) scenario.runs = opts.runs;
    if (!opts.cost_policy.empty() &&
        !sfcsim::cost_policy_from_string(opts.cost_policy,
                                         scenario.dmano.cost_policy)) {
        std::cerr << "unknown cost policy '" << opts.cost_policy << "'\n";
        return std::nullopt;
    }
    return scenario;
}

std::string run_csv_path(const std::string& dir, std::uint32_t run) {
    std::ostringstream name;
    name << dir << "/run_" << std::setw(3) << std::setfill('0') << run << ".csv";
    return name.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

json batch_summary_json(const sfcsim::Scenario& scenario,
                        const sfcsim::BatchOutput& batch) {
    json doc;
    doc["scenario"] = scenario.name;
    doc["seed"] = scenario.seed;
    doc["runs"] = scenario.runs;
    doc["cost_policy"] = sfcsim::to_string(scenario.dmano.cost_policy);
    json phases = json::array();
    for (const auto& window : batch.windows) {
        json phase;
        phase["name"] = window.name;
        phase["from_s"] = window.from;
        phase["to_s"] = window.to;
        json instances = json::array();
        auto it = batch.aggregate.find(window.name);
        if (it != batch.aggregate.end()) {
            for (const auto& [id, stats] : it->second) {
                json inst;
                inst["instance"] = id;
                inst["host"] = batch.hosts.count(id) ? batch.hosts.at(id) : "";
                inst["label"] = batch.labels.count(id) ? batch.labels.at(id) : "";
                inst["mean"] = stats.mean;
                inst["median"] = stats.median;
                inst["q1"] = stats.q1;
                inst["q3"] = stats.q3;
                inst["min"] = stats.min;
                inst["max"] = stats.max;
                instances.push_back(inst);
            }
        }
        phase["instances"] = instances;
        phases.push_back(phase);
    }
    doc["phases"] = phases;
    return doc;
}

void print_batch_summary(const sfcsim::Scenario& scenario,
                         const sfcsim::BatchOutput& batch,
                         const std::string& format) {
    if (format == "json") {
        std::cout << batch_summary_json(scenario, batch).dump(2) << "\n";
        return;
    }
    for (const auto& window : batch.windows) {
        std::cout << window.name << " [" << window.from << "," << window.to
                  << "s]:";
        auto it = batch.aggregate.find(window.name);
        if (it != batch.aggregate.end()) {
            for (const auto& [id, stats] : it->second) {
                const std::string label =
                    batch.labels.count(id) && !batch.labels.at(id).empty()
                        ? batch.labels.at(id)
                        : "i" + std::to_string(id);
                std::cout << "  " << label << "="
                          << sfcsim::format_double(stats.mean);
            }
        }
        std::cout << "\n";
    }
}

int cmd_run(const CommonOpts& opts) {
    auto scenario = load_checked(opts);
    if (!scenario) return kExitValidation;
    scenario->runs = 1;
    fs::create_directories(opts.out_dir);

    sfcsim::BatchOutput batch =
        sfcsim::run_batch(*scenario, [&](const sfcsim::RunResult& result) {
            std::ostringstream csv;
            sfcsim::write_run_csv(csv, result);
            write_file(run_csv_path(opts.out_dir, result.run_index), csv.str());
        });
    print_batch_summary(*scenario, batch, opts.format);
    if (log_level() >= 2) {
        const auto& c = batch.runs.front().counters;
        std::cerr << "packets_in=" << c.packets_in << " delivered=" << c.delivered
                  << " drops=" << c.total_drops() << " lsa_tx=" << c.lsa_tx_total
                  << "\n";
    }
    return kExitOk;
}

int cmd_batch(const CommonOpts& opts) {
    auto scenario = load_checked(opts);
    if (!scenario) return kExitValidation;
    fs::create_directories(opts.out_dir);

    sfcsim::BatchOutput batch =
        sfcsim::run_batch(*scenario, [&](const sfcsim::RunResult& result) {
            std::ostringstream csv;
            sfcsim::write_run_csv(csv, result);
            write_file(run_csv_path(opts.out_dir, result.run_index), csv.str());
        });

    std::ostringstream agg;
    sfcsim::write_aggregate_csv(agg, batch);
    write_file(opts.out_dir + "/aggregate.csv", agg.str());

    print_batch_summary(*scenario, batch, opts.format);
    return kExitOk;
}

int cmd_validate(const CommonOpts& opts) {
    auto scenario = load_checked(opts);
    if (!scenario) return kExitValidation;
    std::cout << opts.scenario_path << ": OK\n";
    return kExitOk;
}

int cmd_dump_wcmp(const CommonOpts& opts, const std::string& node_name,
                  double at) {
    auto scenario = load_checked(opts);
    if (!scenario) return kExitValidation;

    std::string target = node_name;
    if (target.empty()) {
        target = scenario->traffic.ingress.empty() ? scenario->nodes.front()
                                                   : scenario->traffic.ingress;
    }
    if (!scenario->node_ids.count(target)) {
        std::cerr << "unknown node '" << target << "'\n";
        return kExitValidation;
    }

    sfcsim::Simulation::Options sim_opts;
    sim_opts.traffic_enabled = false;
    sfcsim::Simulation sim(*scenario, 0, sim_opts);
    sim.run_until(at);

    std::map<sfcsim::ServiceTypeId, std::string> service_names;
    for (const auto& [name, id] : scenario->service_ids) service_names[id] = name;

    const auto& table = sim.node(scenario->node_id(target)).connector.table();
    std::cout << "service_type,instance,host,n,v,c,w,p,generation\n";
    for (const auto& [type, group] : table.groups) {
        for (const auto& e : group.entries) {
            std::cout << service_names[type] << ',' << e.instance << ','
                      << scenario->nodes[e.host] << ',' << e.cost.network_cost
                      << ',' << e.cost.vnf_cost << ',' << e.cost.total << ','
                      << sfcsim::format_double(e.weight) << ','
                      << sfcsim::format_double(e.probability) << ','
                      << table.generation << '\n';
        }
    }
    return kExitOk;
}

int cmd_oracle(const CommonOpts& opts) {
    auto scenario = load_checked(opts);
    if (!scenario) return kExitValidation;

    const auto phases =
        sfcsim::oracle_for_scenario(*scenario, scenario->dmano.cost_policy);
    if (opts.format == "json") {
        json doc;
        doc["scenario"] = scenario->name;
        doc["cost_policy"] = sfcsim::to_string(scenario->dmano.cost_policy);
        json arr = json::array();
        for (const auto& phase : phases) {
            json p;
            p["name"] = phase.phase;
            p["from_s"] = phase.from;
            p["to_s"] = phase.to;
            p["converged"] = phase.result.converged;
            p["iterations"] = phase.result.iterations;
            json instances = json::array();
            for (std::size_t i = 0; i < phase.instances.size(); ++i) {
                json inst;
                inst["instance"] = phase.instances[i].instance;
                inst["label"] = phase.instances[i].label;
                inst["network_cost"] = phase.instances[i].network_cost;
                inst["routing_p"] = phase.result.routing_p[i];
                inst["admitted_share"] = phase.result.admitted_share[i];
                instances.push_back(inst);
            }
            p["instances"] = instances;
            arr.push_back(p);
        }
        doc["phases"] = arr;
        std::cout << doc.dump(2) << "\n";
        return kExitOk;
    }
    for (const auto& phase : phases) {
        std::cout << phase.phase << " [" << phase.from << "," << phase.to
                  << "s]: [";
        for (std::size_t i = 0; i < phase.result.admitted_share.size(); ++i) {
            if (i > 0) std::cout << ", ";
            std::cout << sfcsim::format_double(phase.result.admitted_share[i]);
        }
        std::cout << "] "
                  << (phase.result.converged ? "converged" : "not converged")
                  << " (" << phase.result.iterations << " iterations)\n";
    }
    return kExitOk;
}

int cmd_plot(const std::string& in_dir, const std::string& out_dir) {
    std::vector<fs::path> run_files;
    if (!fs::is_directory(in_dir)) {
        std::cerr << in_dir << " is not a directory\n";
        return kExitRuntime;
    }
    for (const auto& entry : fs::directory_iterator(in_dir)) {
        const auto name = entry.path().filename().string();
        if (name.rfind("run_", 0) == 0 && entry.path().extension() == ".csv") {
            run_files.push_back(entry.path());
        }
    }
    std::sort(run_files.begin(), run_files.end());
    if (run_files.empty()) {
        std::cerr << in_dir << ": no run_*.csv files to plot\n";
        return kExitRuntime;
    }

    // Mean share per instance per sample time across runs.
    std::map<sfcsim::InstanceId, std::string> hosts;
    std::map<sfcsim::InstanceId, std::map<double, std::pair<double, int>>> acc;
    for (const auto& path : run_files) {
        std::ifstream in(path);
        const auto parsed = sfcsim::read_run_csv(in);
        for (const auto& [id, host] : parsed.hosts) hosts[id] = host;
        for (const auto& frame : parsed.frames) {
            for (const auto& inst : frame.instances) {
                auto& cell = acc[inst.instance][frame.time];
                cell.first += inst.share;
                cell.second += 1;
            }
        }
    }
    std::vector<sfcsim::Series> series;
    for (const auto& [id, samples] : acc) {
        sfcsim::Series s;
        s.label = hosts[id] + "/i" + std::to_string(id);
        for (const auto& [t, cell] : samples) {
            s.points.emplace_back(t, 100.0 * cell.first / cell.second);
        }
        series.push_back(std::move(s));
    }

    fs::create_directories(out_dir);
    std::ostringstream chart;
    const bool has_data = sfcsim::write_line_chart_svg(
        chart, "Traffic share per VNF instance", "time (s)", "share (%)",
        series);
    write_file(out_dir + "/timeseries.svg", chart.str());
    if (!has_data) {
        std::cerr << "warning: all series are empty (zero-traffic input?)\n";
    }

    // Per-phase box summaries from the batch aggregate, when present.
    const auto agg_path = fs::path(in_dir) / "aggregate.csv";
    if (fs::exists(agg_path)) {
        std::ifstream in(agg_path);
        std::string line;
        std::getline(in, line);  // header
        std::map<std::string, std::vector<sfcsim::BoxStat>> by_phase;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::istringstream row(line);
            std::vector<std::string> f;
            std::string field;
            while (std::getline(row, field, ',')) f.push_back(field);
            if (f.size() != 10) continue;
            sfcsim::BoxStat box;
            box.label = f[3].empty() ? f[2] + "/i" + f[1] : f[3];
            box.median = std::stod(f[5]) * 100.0;
            box.q1 = std::stod(f[6]) * 100.0;
            box.q3 = std::stod(f[7]) * 100.0;
            box.min = std::stod(f[8]) * 100.0;
            box.max = std::stod(f[9]) * 100.0;
            by_phase[f[0]].push_back(box);
        }
        for (const auto& [phase, boxes] : by_phase) {
            std::ostringstream svg;
            sfcsim::write_boxplot_svg(svg, "Traffic distribution, " + phase,
                                      "share (%)", boxes);
            write_file(out_dir + "/boxplot_" + phase + ".svg", svg.str());
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic service-function-chaining simulator"};
    app.require_subcommand(1);

    CommonOpts run_opts;
    CommonOpts batch_opts;
    CommonOpts validate_opts;
    CommonOpts dump_opts;
    CommonOpts oracle_opts;
    std::string dump_node;
    double dump_at = 5.0;
    std::string plot_in;
    std::string plot_out;

    auto* run_cmd = app.add_subcommand("run", "Run a single simulation");
    add_common(run_cmd, run_opts);

    auto* batch_cmd =
        app.add_subcommand("batch", "Run a batch and aggregate the results");
    add_common(batch_cmd, batch_opts);

    auto* validate_cmd = app.add_subcommand("validate", "Validate a scenario");
    add_common(validate_cmd, validate_opts, /*with_out=*/false);

    auto* dump_cmd = app.add_subcommand(
        "dump-wcmp", "Print a node's WCMP table after control-plane warmup");
    add_common(dump_cmd, dump_opts, /*with_out=*/false);
    dump_cmd->add_option("--node", dump_node, "Node name (default: ingress)");
    dump_cmd->add_option("--at", dump_at, "Simulated time of the dump (s)");

    auto* oracle_cmd = app.add_subcommand(
        "oracle", "Predict steady-state shares from the fluid model");
    add_common(oracle_cmd, oracle_opts, /*with_out=*/false);

    auto* plot_cmd =
        app.add_subcommand("plot", "Render SVG plots from run/batch output");
    plot_cmd->add_option("--in", plot_in, "Directory with run_*.csv")->required();
    plot_cmd->add_option("--out", plot_out, "Output directory (default: --in)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return cmd_run(run_opts);
        if (batch_cmd->parsed()) return cmd_batch(batch_opts);
        if (validate_cmd->parsed()) return cmd_validate(validate_opts);
        if (dump_cmd->parsed()) return cmd_dump_wcmp(dump_opts, dump_node, dump_at);
        if (oracle_cmd->parsed()) return cmd_oracle(oracle_opts);
        if (plot_cmd->parsed()) {
            return cmd_plot(plot_in, plot_out.empty() ? plot_in : plot_out);
        }
    } catch (const sfcsim::UnsupportedByOracle& e) {
        std::cerr << "unsupported by oracle: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

#include "ffs/runner.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ffs/config.hpp"
#include "ffs/des.hpp"
#include "ffs/errors.hpp"
#include "ffs/radio.hpp"
#include "ffs/sweep.hpp"

namespace ffsim {

const char* const kToolVersion = "0.1.0";

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

// Row-oriented CSV buffer; writes UTF-8 with LF newlines.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void row(std::vector<std::string> cells) { rows.push_back(std::move(cells)); }
    void write(const std::filesystem::path& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error("cannot write " + path.string());
        for (std::size_t i = 0; i < columns.size(); ++i)
            out << (i ? "," : "") << csv_field(columns[i]);
        out << "\n";
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i)
                out << (i ? "," : "") << csv_field(r[i]);
            out << "\n";
        }
    }
};

// Long-format companion table for plotting tools.
struct PlotData {
    Table table{{"series", "x", "y"}, {}};
    void add(const std::string& series, double x, double y) {
        table.row({series, fmt(x), fmt(y)});
    }
};

std::string utc_now() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_manifest(const std::filesystem::path& dir, const std::string& sub,
                    const ExperimentConfig& cfg, const std::vector<std::string>& outputs) {
    json m;
    m["subcommand"] = sub;
    m["config_hash"] = cfg.config_hash;
    m["seed"] = cfg.experiment.seed;
    m["trials"] = cfg.experiment.trials;
    m["tool_version"] = kToolVersion;
    m["outputs"] = outputs;
    m["generated_utc"] = utc_now();
    std::ofstream out(dir / (sub + "_manifest.json"), std::ios::binary);
    if (!out) throw Error("cannot write manifest");
    out << m.dump(2) << "\n";
}

std::string service_name(ServiceKind k) { return k == ServiceKind::Embb ? "embb" : "urllc"; }

void run_mar_sweep(const ExperimentConfig& cfg, Table& table, PlotData& plot) {
    table.columns = {"gamma_db",  "p_cm_analytic",      "p_dm_analytic",
                     "p_cm_mc",   "p_cm_mc_half_width", "p_dm_mc",
                     "config_hash"};
    for (double gdb : cfg.experiment.gamma_grid_db) {
        double gamma = db_to_linear(gdb);
        auto [p_cm, p_dm] = mar_analytic(gamma, cfg.scenario.model.pathloss_exponent);
        MarEstimate emp = mar_empirical(cfg.scenario.model, gamma, cfg.experiment.trials,
                                        cfg.experiment.confidence);
        table.row({fmt(gdb), fmt(p_cm), fmt(p_dm), fmt(emp.p_cm.mean),
                   fmt(emp.p_cm.half_width), fmt(emp.p_dm.mean), cfg.config_hash});
        plot.add("p_cm_analytic", gdb, p_cm);
        plot.add("p_cm_mc", gdb, emp.p_cm.mean);
    }
}

void run_coverage_sweep(const ExperimentConfig& cfg, Table& table, PlotData& plot) {
    table.columns = {"gamma_db",       "threshold_db", "total_analytic", "dm_analytic",
                     "cm_analytic",    "total_mc",     "total_mc_half_width",
                     "dm_mc",          "cm_mc",        "config_hash"};
    std::vector<double> t_grid;
    for (double tdb : cfg.experiment.threshold_grid_db) t_grid.push_back(db_to_linear(tdb));
    for (double gdb : cfg.experiment.gamma_grid_db) {
        double gamma = db_to_linear(gdb);
        auto mc = mc_coverage(cfg.scenario.model, gamma, t_grid, cfg.mc());
        for (std::size_t k = 0; k < t_grid.size(); ++k) {
            CoverageQuery q;
            q.model = cfg.scenario.model;
            q.gamma_linear = gamma;
            q.sinr_threshold_linear = t_grid[k];
            double dm = coverage_dm(q);
            double cm = coverage_cm(q);
            double total = total_coverage(q);
            double tdb = cfg.experiment.threshold_grid_db[k];
            table.row({fmt(gdb), fmt(tdb), fmt(total), fmt(dm), fmt(cm),
                       fmt(mc[k].total.mean), fmt(mc[k].total.half_width),
                       fmt(mc[k].dm_joint.mean), fmt(mc[k].cm_joint.mean),
                       cfg.config_hash});
            plot.add("analytic@gamma_db=" + fmt(gdb), tdb, total);
            plot.add("mc@gamma_db=" + fmt(gdb), tdb, mc[k].total.mean);
        }
    }
}

void run_axis_sweep(const ExperimentConfig& cfg, SweepAxis axis, Table& table,
                    PlotData& plot) {
    if (cfg.experiment.axis_grid.empty())
        throw ConfigError("experiment.axis_grid", "required for this sweep");
    auto rows = sweep_outage(cfg.scenario, axis, cfg.experiment.axis_grid,
                             cfg.cfsma_options());
    table.columns = {"axis_value", "feasible"};
    for (const auto& svc : cfg.scenario.services) {
        table.columns.push_back("p_cm_" + service_name(svc.name));
        table.columns.push_back("p_dm_" + service_name(svc.name));
    }
    for (const char* c : {"rate_nats", "reliability", "outage", "rho_cu", "rho_du",
                          "note", "config_hash"})
        table.columns.push_back(c);
    for (const auto& r : rows) {
        std::vector<std::string> cells{fmt(r.axis_value), r.feasible ? "1" : "0"};
        for (std::size_t s = 0; s < cfg.scenario.services.size(); ++s) {
            cells.push_back(fmt(r.p_cm[s]));
            cells.push_back(fmt(r.p_dm[s]));
        }
        cells.push_back(fmt(r.rate_nats));
        cells.push_back(fmt(r.reliability));
        cells.push_back(fmt(r.outage));
        cells.push_back(fmt(r.rho_cu));
        cells.push_back(fmt(r.rho_du));
        cells.push_back(r.note);
        cells.push_back(cfg.config_hash);
        table.row(std::move(cells));
        plot.add("outage", r.axis_value, r.outage);
        plot.add("rate_nats", r.axis_value, r.rate_nats);
    }
}

void run_cfsma(const ExperimentConfig& cfg, const std::filesystem::path& dir,
               std::vector<std::string>& outputs) {
    const Scenario& sc = cfg.scenario;
    CfsmaResult res = cfsma(sc.services, sc.modes, sc.server, sc.model, cfg.cfsma_options());
    json out;
    out["status"] = res.status == CfsmaStatus::Optimal ? "Optimal" : "Infeasible";
    out["config_hash"] = cfg.config_hash;
    if (res.status == CfsmaStatus::Optimal) {
        json per;
        for (std::size_t s = 0; s < sc.services.size(); ++s) {
            json e;
            e["gamma_db"] = linear_to_db(res.gamma_star[s]);
            e["p_cm"] = res.p_cm_star[s];
            const FeasibleSet& fs = res.feasible_sets[s];
            if (!fs.feasible.empty)
                e["feasible_p_cm"] = {fs.feasible.lb, fs.feasible.ub};
            per[service_name(sc.services[s].name)] = e;
        }
        out["services"] = per;
        out["rate_nats"] = res.achieved_rate_nats;
        out["urllc_reliability"] = res.urllc_reliability;
        out["rho_cu"] = res.rho_cu;
        out["rho_du"] = res.rho_du;
    } else {
        out["violated_constraint"] = res.violated_constraint;
    }
    std::ofstream f(dir / "cfsma.json", std::ios::binary);
    if (!f) throw Error("cannot write cfsma.json");
    f << out.dump(2) << "\n";
    outputs.push_back("cfsma.json");
}

void run_queue_sim(const ExperimentConfig& cfg, Table& table, PlotData& plot) {
    const Scenario& sc = cfg.scenario;
    double alpha = sc.model.pathloss_exponent;
    std::vector<ModeSplit> mars;
    for (const auto& svc : sc.services) {
        auto [p_cm, p_dm] = mar_analytic(svc.gamma_linear, alpha);
        mars.push_back({p_cm, p_dm});
    }
    SystemLoad load = workload(sc.services, sc.modes, mars, sc.server);

    // One DES class per (service, mode) at the CU, deterministic service.
    struct Entry {
        std::string label;
        DesClass cls;
    };
    std::vector<Entry> entries;
    for (std::size_t s = 0; s < sc.services.size(); ++s) {
        for (Mode m : kModes) {
            double p = mars[s].get(m);
            if (p <= 0.0) continue;
            double rate = sc.services[s].user_count * sc.services[s].arrival_rate * p;
            double service = service_time_s(sc.modes.get(m).beta_cu,
                                            sc.services[s].cycles_per_packet,
                                            sc.server.cu_rate);
            if (rate <= 0.0 || service <= 0.0) continue;
            std::string label = service_name(sc.services[s].name) +
                                std::string(m == Mode::CM ? "_cm" : "_dm");
            entries.push_back({label, {rate, service, false}});
        }
    }
    if (entries.empty()) throw ConfigError("services", "no traffic to simulate");

    std::vector<DesClass> classes;
    std::vector<FcfsClass> fcfs;
    for (const auto& e : entries) {
        classes.push_back(e.cls);
        fcfs.push_back({e.cls.arrival_rate, e.cls.service_mean_s});
    }
    DesResult ps = des_queue(Discipline::PS, classes, cfg.mc());
    DesResult fc = des_queue(Discipline::FCFS, classes, cfg.mc());
    double fcfs_wait = load.rho_cu < 1.0 ? fcfs_waiting_s(fcfs) : 0.0;

    table.columns = {"class",       "discipline",       "arrival_rate",
                     "service_s",   "analytic_sojourn_s", "sim_sojourn_s",
                     "sim_half_width_s", "unstable",     "config_hash"};
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        double ps_analytic =
            load.rho_cu < 1.0 ? ps_sojourn_mean(e.cls.service_mean_s, load.rho_cu) : 0.0;
        table.row({e.label, "ps", fmt(e.cls.arrival_rate), fmt(e.cls.service_mean_s),
                   fmt(ps_analytic), fmt(ps.sojourn_s[i].mean),
                   fmt(ps.sojourn_s[i].half_width), ps.unstable ? "1" : "0",
                   cfg.config_hash});
        table.row({e.label, "fcfs", fmt(e.cls.arrival_rate), fmt(e.cls.service_mean_s),
                   fmt(load.rho_cu < 1.0 ? fcfs_wait + e.cls.service_mean_s : 0.0),
                   fmt(fc.sojourn_s[i].mean), fmt(fc.sojourn_s[i].half_width),
                   fc.unstable ? "1" : "0", cfg.config_hash});
        plot.add(e.label + "_ps", static_cast<double>(i), ps.sojourn_s[i].mean);
        plot.add(e.label + "_fcfs", static_cast<double>(i), fc.sojourn_s[i].mean);
    }
}

}  // namespace

int run_subcommand(const std::string& subcommand, const RunOptions& options,
                   std::ostream& err) {
    try {
        ExperimentConfig cfg = options.config_path.empty()
                                   ? parse_config(default_config_json())
                                   : load_config(options.config_path);
        if (options.seed) cfg.experiment.seed = *options.seed;
        if (options.trials) cfg.experiment.trials = *options.trials;
        cfg.scenario.model.rng_seed = cfg.experiment.seed;

        std::filesystem::path dir(options.out_dir);
        std::filesystem::create_directories(dir);
        std::vector<std::string> outputs;

        if (subcommand == "cfsma") {
            run_cfsma(cfg, dir, outputs);
        } else {
            Table table;
            PlotData plot;
            if (subcommand == "mar-sweep")
                run_mar_sweep(cfg, table, plot);
            else if (subcommand == "coverage-sweep")
                run_coverage_sweep(cfg, table, plot);
            else if (subcommand == "density-sweep")
                run_axis_sweep(cfg, SweepAxis::EmbbDensity, table, plot);
            else if (subcommand == "overhead-sweep")
                run_axis_sweep(cfg, SweepAxis::CmOverhead, table, plot);
            else if (subcommand == "eta-sweep")
                run_axis_sweep(cfg, SweepAxis::DuEfficiency, table, plot);
            else if (subcommand == "queue-sim")
                run_queue_sim(cfg, table, plot);
            else
                throw ConfigError("subcommand", "unknown subcommand: " + subcommand);
            std::string csv = subcommand + ".csv";
            table.write(dir / csv);
            outputs.push_back(csv);
            if (options.plot_data) {
                std::string pcsv = subcommand + "_plot.csv";
                plot.table.write(dir / pcsv);
                outputs.push_back(pcsv);
            }
        }
        write_manifest(dir, subcommand, cfg, outputs);
        return 0;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NumericsError& e) {
        err << "numerics error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace ffsim

#include "bohmflow/runner.hpp"

#include "bohmflow/csvio.hpp"
#include "bohmflow/fields.hpp"
#include "bohmflow/svg.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

namespace bohmflow {

const char* version_string() { return "bohmflow 1.0.0"; }

namespace {

const char* aux_column_name(ScenarioKind k) {
    switch (k) {
    case ScenarioKind::Cavity:
    case ScenarioKind::OverlapDevice: return "r_b";
    case ScenarioKind::DetectorD3: return "r_c";
    case ScenarioKind::Bubble: return "r_e";
    default: return nullptr;
    }
}

/// Flux probe instant: the packet centres sit one sigma0 short of the
/// crossing, where the cross-term flux through z = 0 peaks (it vanishes
/// by symmetry at t_meet itself).
double probe_flux_time(const Geometry& g) {
    return g.t_start + (0.5 * g.separation - g.sigma0) / g.vz();
}

Domain default_domain(const Geometry& g, double t_end) {
    Domain d;
    const double x_max = g.vx() * (t_end - g.t_start);
    d.lo = {-0.2 * x_max - 20.0, -(0.5 * g.separation + 40.0 * g.sigma0)};
    d.hi = {1.2 * x_max + 20.0, 0.5 * g.separation + 40.0 * g.sigma0};
    return d;
}

double resolved_slice_x(const RunConfig& cfg, const Geometry& g) {
    return cfg.slice_x >= 0.0 ? cfg.slice_x : g.x_meet();
}

double resolved_field_time(const RunConfig& cfg, const Geometry& g) {
    return cfg.field_time >= 0.0 ? cfg.field_time : g.t_meet();
}

double aux_slice_value(const RunConfig& cfg) {
    switch (cfg.kind) {
    case ScenarioKind::Cavity:
    case ScenarioKind::OverlapDevice: return cfg.rb0;
    default: return 0.0;
    }
}

struct FieldGrid {
    int nx = 0, nz = 0;
    double x_lo = 0, x_hi = 0, z_lo = 0, z_hi = 0;
    double t = 0, aux = 0;
    std::vector<double> p, jx, jz, jaux, q, resid;
    bool has_aux = false;
};

FieldGrid evaluate_field_grid(const Scenario& sc, int nx, int nz, double t,
                              double aux_value) {
    FieldGrid g;
    g.nx = nx;
    g.nz = nz;
    g.t = t;
    g.aux = aux_value;
    g.has_aux = sc.state().n_aux() > 0;

    const Geometry& geo = sc.geometry;
    const double sig = geo.sigma0 * 1.5; // generous width at mid flight
    g.x_lo = geo.vx() * (t - geo.t_start) - 8.0 * sig;
    g.x_hi = geo.vx() * (t - geo.t_start) + 8.0 * sig;
    const double z_span =
        std::abs(0.5 * geo.separation - geo.vz() * (t - geo.t_start)) +
        8.0 * sig;
    g.z_lo = -z_span;
    g.z_hi = z_span;

    const auto total = static_cast<std::size_t>(nx) * static_cast<std::size_t>(nz);
    g.p.assign(total, 0.0);
    g.jx.assign(total, 0.0);
    g.jz.assign(total, 0.0);
    g.jaux.assign(total, 0.0);
    g.q.assign(total, 0.0);
    g.resid.assign(total, 0.0);

    std::vector<FieldEvaluator> evals;
    evals.reserve(sc.components.size());
    for (const auto& c : sc.components) evals.emplace_back(c);

    for (int ix = 0; ix < nx; ++ix) {
        const double x = g.x_lo + (g.x_hi - g.x_lo) * (ix + 0.5) / nx;
        for (int iz = 0; iz < nz; ++iz) {
            const double z = g.z_lo + (g.z_hi - g.z_lo) * (iz + 0.5) / nz;
            const std::size_t idx = static_cast<std::size_t>(ix) *
                                        static_cast<std::size_t>(nz) +
                                    static_cast<std::size_t>(iz);
            ConfigPoint q;
            q.atom = {x, z};
            q.aux[0] = aux_value;
            bool any_degenerate = false;
            for (std::size_t k = 0; k < sc.components.size(); ++k) {
                const double w = sc.weights[k];
                const FieldSample s = evals[k].sample(q, t, true);
                g.p[idx] += w * s.p;
                g.jx[idx] += w * s.j.atom.x;
                g.jz[idx] += w * s.j.atom.z;
                if (g.has_aux) g.jaux[idx] += w * s.j.aux[0];
                if (s.degenerate) {
                    any_degenerate = true;
                } else {
                    g.q[idx] += w * s.q_total;
                    g.resid[idx] +=
                        w * evals[k].continuity_residual(q, t, 1e-3);
                }
            }
            if (any_degenerate) {
                g.q[idx] = std::nan("");
                g.resid[idx] = std::nan("");
            }
        }
    }
    return g;
}

void write_field_csv(const FieldGrid& g, const Scenario& sc,
                     const std::string& path) {
    CsvWriter csv(path);
    std::vector<std::string> head{"x", "z"};
    const char* aux_name = aux_column_name(sc.kind);
    if (g.has_aux && aux_name) head.push_back(aux_name);
    head.insert(head.end(), {"t", "P", "jx", "jz"});
    if (g.has_aux) head.push_back("jb");
    head.insert(head.end(), {"Q", "resid"});
    csv.header(head);
    for (int ix = 0; ix < g.nx; ++ix) {
        const double x = g.x_lo + (g.x_hi - g.x_lo) * (ix + 0.5) / g.nx;
        for (int iz = 0; iz < g.nz; ++iz) {
            const double z = g.z_lo + (g.z_hi - g.z_lo) * (iz + 0.5) / g.nz;
            const std::size_t idx = static_cast<std::size_t>(ix) *
                                        static_cast<std::size_t>(g.nz) +
                                    static_cast<std::size_t>(iz);
            csv.cell(x);
            csv.cell(z);
            if (g.has_aux && aux_name) csv.cell(g.aux);
            csv.cell(g.t);
            csv.cell(g.p[idx]);
            csv.cell(g.jx[idx]);
            csv.cell(g.jz[idx]);
            if (g.has_aux) csv.cell(g.jaux[idx]);
            csv.cell(g.q[idx]);
            csv.cell(g.resid[idx]);
            csv.end_row();
        }
    }
}

std::vector<double> transpose_for_svg(const std::vector<double>& v, int nx,
                                      int nz) {
    // FieldGrid stores x-major; SvgFigure::heatmap wants row-major in y
    // with row 0 at the top (y_hi).
    std::vector<double> out(v.size());
    for (int ix = 0; ix < nx; ++ix)
        for (int iz = 0; iz < nz; ++iz)
            out[static_cast<std::size_t>(nz - 1 - iz) *
                    static_cast<std::size_t>(nx) +
                static_cast<std::size_t>(ix)] =
                v[static_cast<std::size_t>(ix) * static_cast<std::size_t>(nz) +
                  static_cast<std::size_t>(iz)];
    return out;
}

void write_field_figures(const FieldGrid& g, const Scenario& sc,
                         const std::string& prefix) {
    {
        SvgFigure fig(g.x_lo, g.x_hi, g.z_lo, g.z_hi, 860, 600,
                      sc.id + ": probability density, t = " + fmt9(g.t));
        fig.heatmap(transpose_for_svg(g.p, g.nx, g.nz), g.nx, g.nz);
        fig.axes("x", "z");
        write_text_file(prefix + "_P.svg", fig.finish());
    }
    {
        SvgFigure fig(g.x_lo, g.x_hi, g.z_lo, g.z_hi, 860, 600,
                      sc.id + ": quantum potential, t = " + fmt9(g.t));
        fig.heatmap(transpose_for_svg(g.q, g.nx, g.nz), g.nx, g.nz, true);
        fig.axes("x", "z");
        write_text_file(prefix + "_Q.svg", fig.finish());
    }
    {
        SvgFigure fig(g.x_lo, g.x_hi, g.z_lo, g.z_hi, 860, 600,
                      sc.id + ": current streamlines, t = " + fmt9(g.t));
        const char* colors[2] = {"#c0392b", "#2062af"};
        for (std::size_t k = 0; k < sc.components.size(); ++k) {
            const FieldEvaluator fields(sc.components[k]);
            const double ds = (g.x_hi - g.x_lo) / 220.0;
            for (int sz = 0; sz < 18; ++sz) {
                ConfigPoint q;
                q.atom = {g.x_lo + 0.02 * (g.x_hi - g.x_lo),
                          g.z_lo + (g.z_hi - g.z_lo) * (sz + 0.5) / 18.0};
                q.aux[0] = g.aux;
                std::vector<Vec2> pts{q.atom};
                for (int s = 0; s < 400; ++s) {
                    const BlockCurrent j = fields.current(q, g.t);
                    const double jn = j.atom.norm();
                    if (jn < 1e-14) break;
                    // midpoint step along the unit current direction
                    ConfigPoint half = q;
                    half.atom = q.atom + j.atom * (0.5 * ds / jn);
                    const BlockCurrent jm = fields.current(half, g.t);
                    const double jmn = jm.atom.norm();
                    if (jmn < 1e-14) break;
                    q.atom = q.atom + jm.atom * (ds / jmn);
                    pts.push_back(q.atom);
                    if (q.atom.x < g.x_lo || q.atom.x > g.x_hi ||
                        q.atom.z < g.z_lo || q.atom.z > g.z_hi)
                        break;
                }
                fig.polyline(pts, colors[k % 2], 1.0);
            }
        }
        fig.line({g.x_lo, 0.0}, {g.x_hi, 0.0}, "#999999", 0.6);
        fig.axes("x", "z");
        write_text_file(prefix + "_j_stream.svg", fig.finish());
    }
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e) ||
        dynamic_cast<const InvalidParameterError*>(&e))
        return kExitConfig;
    if (dynamic_cast<const IoError*>(&e)) return kExitIo;
    if (dynamic_cast<const std::filesystem::filesystem_error*>(&e))
        return kExitIo;
    return kExitDegeneracy;
}

} // namespace

std::vector<ConfigPoint> starting_points(const RunConfig& cfg,
                                         const EntangledState& state,
                                         std::uint64_t seed) {
    const double t0 = state.reference_time();
    if (cfg.fan) {
        std::array<double, kMaxAux> aux{};
        for (int l = 0; l < state.n_aux(); ++l)
            aux[static_cast<size_t>(l)] = aux_slice_value(cfg);
        // pointer-style devices anchor each branch at its own centre; a
        // shared coordinate would start one branch on dead support
        std::vector<ConfigPoint> pts;
        for (const auto& b : state.branches()) {
            EntangledState sub(std::vector<Branch>{Branch{
                                   {1.0, 0.0}, b.atom, b.devices}},
                               t0, EntangledState::NormCheck::Skip);
            auto aux_b = aux;
            for (std::size_t l = 0; l < b.devices.size(); ++l)
                if (b.devices[l].kind() == DeviceState::Kind::Gaussian1D)
                    aux_b[l] = b.devices[l].center();
            auto part = fan_ensemble(sub, t0,
                                     std::max<std::size_t>(1, cfg.n / 2),
                                     cfg.fan_half_width, aux_b);
            pts.insert(pts.end(), part.begin(), part.end());
        }
        return pts;
    }
    EnsembleSpec spec{cfg.n, seed, cfg.sampler};
    return sample_ensemble(state, spec, t0);
}

RunOutcome cmd_run(const RunConfig& cfg, int threads) {
    try {
        const Scenario sc = cfg.build_scenario();
        const Geometry& geo = sc.geometry;
        const double t0 = geo.t_start;
        const double t1 = cfg.resolved_t_end();
        const double dt = cfg.resolved_dt();
        const double t_field = resolved_field_time(cfg, geo);
        const double slice_x = resolved_slice_x(cfg, geo);

        std::filesystem::create_directories(cfg.out_dir);
        const std::string prefix =
            cfg.out_dir + "/" + sc.id + "_s" + std::to_string(cfg.seed);

        EnsembleRunParams ep;
        ep.integrator.dt = dt;
        ep.integrator.domain = default_domain(geo, t1);
        ep.window_lo = sc.window_lo;
        ep.window_hi = sc.window_hi;
        ep.t_mid = t_field;
        ep.audit = true;
        ep.threads = threads;

        // per-component ensembles, pooled with component-index branch tags
        std::vector<TrajectorySummary> pooled;
        std::vector<std::vector<ConfigPoint>> comp_starts;
        std::size_t assigned = 0;
        for (std::size_t k = 0; k < sc.components.size(); ++k) {
            std::size_t nk =
                k + 1 == sc.components.size()
                    ? cfg.n - assigned
                    : static_cast<std::size_t>(
                          std::llround(sc.weights[k] *
                                       static_cast<double>(cfg.n)));
            assigned += nk;
            RunConfig sub = cfg;
            sub.n = nk;
            auto starts = starting_points(sub, sc.components[k], cfg.seed + k);
            auto runs = run_ensemble(sc.components[k], starts, t0, t1, ep);
            if (sc.is_mixture())
                for (auto& r : runs) {
                    r.start_branch = static_cast<int>(k);
                    r.end_branch = static_cast<int>(k);
                }
            comp_starts.push_back(std::move(starts));
            pooled.insert(pooled.end(), runs.begin(), runs.end());
        }

        RunReport rep;
        rep.scenario_id = sc.id;
        rep.seed = cfg.seed;
        rep.n = pooled.size();
        rep.warning = sc.warning;

        const DetectorProbabilities dp = detector_probabilities(sc);
        rep.p_d1_analytic = dp.p_d1;
        rep.p_d2_analytic = dp.p_d2;
        const std::size_t nc = std::max<std::size_t>(pooled.size(), 1000);
        const std::size_t d1_count =
            sample_detector_counts(sc, nc, cfg.seed ^ 0xd1d2ULL);
        rep.p_d1_closure =
            static_cast<double>(d1_count) / static_cast<double>(nc);
        rep.closure_ci_halfwidth =
            1.96 * std::sqrt(std::max(0.0, rep.p_d1_closure *
                                               (1.0 - rep.p_d1_closure) /
                                               static_cast<double>(nc)));

        std::size_t lobe1 = 0, lobe2 = 0, reflected = 0;
        std::vector<double> wobbles;
        for (const auto& r : pooled) {
            if (r.termination != Termination::Completed) continue;
            (classify_detector(r, geo) == Detector::D1 ? lobe1 : lobe2) += 1;
            if ((r.q_start.atom.z > 0.0) == (r.q_end.atom.z > 0.0)) ++reflected;
            wobbles.push_back(static_cast<double>(r.wobble_count));
        }
        rep.crossings = crossing_stats(pooled);
        const double n_total = static_cast<double>(pooled.size());
        rep.lobe_d1 = static_cast<double>(lobe1) / n_total;
        rep.lobe_d2 = static_cast<double>(lobe2) / n_total;
        rep.excluded_fraction =
            static_cast<double>(rep.crossings.excluded) / n_total;
        rep.reflected_fraction =
            rep.crossings.completed
                ? static_cast<double>(reflected) /
                      static_cast<double>(rep.crossings.completed)
                : 0.0;
        if (!wobbles.empty()) {
            std::sort(wobbles.begin(), wobbles.end());
            rep.wobble_median = wobbles[wobbles.size() / 2];
        }

        for (int i = 0; i < 11; ++i) {
            const double t =
                sc.window_lo + (sc.window_hi - sc.window_lo) * i / 10.0;
            rep.flux_series.emplace_back(t, plane_flux(sc, t));
        }

        rep.visibility_analytic = fringe_visibility_analytic(sc, slice_x, t_field);
        try {
            rep.visibility_binned = fringe_visibility_binned(
                pooled, geo, slice_x, 3.0 * geo.sigma0, 8);
        } catch (const InsufficientStatisticsError&) {
        }
        try {
            rep.fringe_amplitude = fringe_amplitude_empirical(pooled, geo);
        } catch (const InsufficientStatisticsError&) {
        }
        if (rep.crossings.completed >= 1000 && !cfg.fan)
            rep.tv_distance = equivariance_distance(pooled, sc, t1, 40);
        if (sc.state().n_aux() > 0)
            rep.energy = energy_audit_summary(pooled, geo);

        // trajectory dump (re-integrated at the recording stride)
        {
            CsvWriter csv(prefix + "_trajectories.csv");
            std::vector<std::string> head{"traj_id", "t", "x", "z"};
            const char* aux_name = aux_column_name(sc.kind);
            if (aux_name) head.push_back(aux_name);
            head.insert(head.end(), {"vx", "vz", "Ekin", "Q", "term"});
            csv.header(head);
            long long traj_id = 0;
            std::vector<std::vector<Vec2>> paths;
            std::vector<int> path_arm;
            for (std::size_t k = 0; k < sc.components.size(); ++k) {
                const FieldEvaluator fields(sc.components[k]);
                const auto limit = static_cast<std::size_t>(std::max(
                    1.0, sc.weights[k] * cfg.traj_dump_max));
                for (std::size_t i = 0;
                     i < std::min(limit, comp_starts[k].size()); ++i) {
                    IntegratorParams ip = ep.integrator;
                    Trajectory tr = integrate_trajectory(
                        fields, comp_starts[k][i], t0, t1, ip,
                        cfg.record_stride);
                    paths.emplace_back();
                    path_arm.push_back(dominant_branch(
                        sc.components[k], comp_starts[k][i], t0) +
                        (sc.is_mixture() ? static_cast<int>(k) : 0));
                    for (const auto& pt : tr.points) {
                        paths.back().push_back(pt.q.atom);
                        csv.cell(traj_id);
                        csv.cell(pt.t);
                        csv.cell(pt.q.atom.x);
                        csv.cell(pt.q.atom.z);
                        if (aux_name) csv.cell(pt.q.aux[0]);
                        csv.cell(pt.v.atom.x);
                        csv.cell(pt.v.atom.z);
                        csv.cell(0.5 * sc.components[k].atom_mass() *
                                 pt.v.atom.norm2());
                        double q_total = std::nan("");
                        const FieldSample fs = fields.sample(pt.q, pt.t, true);
                        if (!fs.degenerate) q_total = fs.q_total;
                        csv.cell(q_total);
                        csv.cell(std::string(termination_name(tr.termination)));
                        csv.end_row();
                    }
                    ++traj_id;
                }
            }
            if (cfg.figures) {
                const Domain dom = ep.integrator.domain;
                const double zspan = 0.5 * geo.separation + 6.0;
                SvgFigure fig(std::max(dom.lo.x, -5.0),
                              geo.vx() * (t1 - t0) + 10.0, -zspan, zspan, 900,
                              620, sc.id + ": trajectories");
                fig.line({0.0, 0.0}, {geo.vx() * (t1 - t0) + 10.0, 0.0},
                         "#bbbbbb", 0.6);
                for (std::size_t i = 0; i < paths.size(); ++i)
                    fig.polyline(paths[i],
                                 path_arm[i] == 0 ? "#c0392b" : "#2062af", 0.8);
                fig.axes("x", "z");
                write_text_file(prefix + "_trajectories.svg", fig.finish());
            }
        }

        // field grid at the mid-flight time
        {
            const FieldGrid grid = evaluate_field_grid(
                sc, cfg.grid_nx, cfg.grid_nz, t_field, aux_slice_value(cfg));
            write_field_csv(grid, sc, prefix + "_fields.csv");
            if (cfg.figures) write_field_figures(grid, sc, prefix);
        }

        // report files
        std::ostringstream report;
        report << rep.to_text();
        report << "# resolved config\n" << cfg.serialize();
        write_text_file(prefix + "_report.txt", report.str());
        write_text_file(prefix + "_resolved.cfg", cfg.serialize());
        {
            CsvWriter csv(prefix + "_metrics.csv");
            csv.header({"key", "value"});
            auto kv = [&](const std::string& k, double v) {
                csv.cell(k);
                csv.cell(v);
                csv.end_row();
            };
            kv("p_d1_analytic", rep.p_d1_analytic);
            kv("p_d2_analytic", rep.p_d2_analytic);
            kv("p_d1_closure", rep.p_d1_closure);
            kv("lobe_d1", rep.lobe_d1);
            kv("lobe_d2", rep.lobe_d2);
            kv("excluded_fraction", rep.excluded_fraction);
            kv("crossing_trajectories",
               static_cast<double>(rep.crossings.trajectories_crossing));
            kv("visibility_analytic", rep.visibility_analytic);
            if (rep.visibility_binned)
                kv("visibility_binned", *rep.visibility_binned);
            if (rep.fringe_amplitude)
                kv("fringe_amplitude", *rep.fringe_amplitude);
            if (rep.tv_distance) kv("tv_distance", *rep.tv_distance);
            kv("reflected_fraction", rep.reflected_fraction);
            kv("wobble_median", rep.wobble_median);
        }
        {
            CsvWriter csv(prefix + "_flux.csv");
            csv.header({"t", "flux"});
            for (const auto& [t, f] : rep.flux_series) {
                csv.cell(t);
                csv.cell(f);
                csv.end_row();
            }
        }
        if (!rep.energy.empty()) {
            CsvWriter csv(prefix + "_energy.csv");
            csv.header({"class", "count", "pre_ekin_atom", "pre_q_atom",
                        "pre_q_box", "pre_e_total", "post_ekin_atom",
                        "post_q_atom", "post_q_box", "post_e_total",
                        "mean_rel_drift", "max_rel_drift"});
            for (const auto& row : rep.energy) {
                csv.cell(row.label);
                csv.cell(static_cast<long long>(row.count));
                csv.cell(row.pre_ekin_atom);
                csv.cell(row.pre_q_atom);
                csv.cell(row.pre_q_box);
                csv.cell(row.pre_e_total);
                csv.cell(row.post_ekin_atom);
                csv.cell(row.post_q_atom);
                csv.cell(row.post_q_box);
                csv.cell(row.post_e_total);
                csv.cell(row.mean_rel_drift);
                csv.cell(row.max_rel_drift);
                csv.end_row();
            }
        }

        if (rep.excluded_fraction > cfg.exclusion_budget) {
            RunOutcome bad;
            bad.exit_code = kExitDegeneracy;
            bad.report_text = rep.to_text();
            bad.error = "node-degenerate exclusion rate " +
                        fmt9(rep.excluded_fraction) + " exceeds budget " +
                        fmt9(cfg.exclusion_budget);
            return bad;
        }
        return {kExitOk, rep.to_text(), ""};
    } catch (const std::exception& e) {
        return {exit_code_for(e), "", e.what()};
    }
}

RunOutcome cmd_fields(const RunConfig& cfg, int nx, int nz, double time,
                      int /*threads*/) {
    try {
        const Scenario sc = cfg.build_scenario();
        const int gx = nx > 0 ? nx : cfg.grid_nx;
        const int gz = nz > 0 ? nz : cfg.grid_nz;
        const double t =
            time >= 0.0 ? time : resolved_field_time(cfg, sc.geometry);

        std::filesystem::create_directories(cfg.out_dir);
        const std::string prefix =
            cfg.out_dir + "/" + sc.id + "_s" + std::to_string(cfg.seed);

        const FieldGrid grid =
            evaluate_field_grid(sc, gx, gz, t, aux_slice_value(cfg));
        write_field_csv(grid, sc, prefix + "_fields.csv");
        write_field_figures(grid, sc, prefix);

        std::ostringstream os;
        os << "fields: " << gx << "x" << gz << " grid at t = " << fmt9(t)
           << " written to " << prefix << "_fields.csv\n";
        return {kExitOk, os.str(), ""};
    } catch (const std::exception& e) {
        return {exit_code_for(e), "", e.what()};
    }
}

RunOutcome cmd_sweep(const RunConfig& cfg, const std::string& param,
                     const std::vector<double>& values, int /*threads*/) {
    try {
        if (!RunConfig::is_sweepable(param))
            throw ConfigError("sweep: key '" + param +
                              "' is not a sweepable numeric key");
        if (values.empty())
            throw ConfigError("sweep: no values given");

        std::filesystem::create_directories(cfg.out_dir);
        std::string fname = param;
        for (auto& ch : fname)
            if (ch == '.') ch = '_';
        const std::string path = cfg.out_dir + "/sweep_" + fname + ".csv";
        CsvWriter csv(path);
        csv.header({param, "p_d1", "p_d2", "plane_flux", "visibility"});

        std::ostringstream os;
        for (double v : values) {
            RunConfig sub = cfg;
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            sub.set(param, buf);
            const Scenario sc = sub.build_scenario();
            const DetectorProbabilities dp = detector_probabilities(sc);
            const double flux = plane_flux(sc, probe_flux_time(sc.geometry));
            const double vis = fringe_visibility_analytic(
                sc, resolved_slice_x(sub, sc.geometry), sc.geometry.t_meet());
            csv.cell(v);
            csv.cell(dp.p_d1);
            csv.cell(dp.p_d2);
            csv.cell(flux);
            csv.cell(vis);
            csv.end_row();
            os << param << " = " << fmt9(v) << "  p_d1 = " << fmt9(dp.p_d1)
               << "  flux = " << fmt9(flux) << "  V = " << fmt9(vis) << "\n";
        }
        os << "sweep written to " << path << "\n";
        return {kExitOk, os.str(), ""};
    } catch (const std::exception& e) {
        return {exit_code_for(e), "", e.what()};
    }
}

} // namespace bohmflow

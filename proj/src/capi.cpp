#include "bohmflow.h"

#include "bohmflow/csvio.hpp"
#include "bohmflow/fields.hpp"
#include "bohmflow/runner.hpp"

#include <cstring>
#include <filesystem>

namespace {

thread_local std::string g_last_error;

int code_for(const std::exception& e) {
    using namespace bohmflow;
    if (dynamic_cast<const ConfigError*>(&e) ||
        dynamic_cast<const InvalidParameterError*>(&e))
        return BF_ERR_CONFIG;
    if (dynamic_cast<const IoError*>(&e) ||
        dynamic_cast<const std::filesystem::filesystem_error*>(&e))
        return BF_ERR_IO;
    return BF_ERR_DEGENERACY;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

bf_status finish(const bohmflow::RunOutcome& r, char** report) {
    if (r.exit_code != bohmflow::kExitOk) {
        g_last_error = r.error;
        if (report && !r.report_text.empty()) *report = dup_string(r.report_text);
        return static_cast<bf_status>(r.exit_code);
    }
    if (report) *report = dup_string(r.report_text);
    return BF_OK;
}

} // namespace

struct bf_config {
    bohmflow::RunConfig cfg;
};

struct bf_scenario {
    bohmflow::Scenario sc;
};

extern "C" {

const char* bf_version(void) { return bohmflow::version_string(); }

const char* bf_last_error(void) { return g_last_error.c_str(); }

bf_config* bf_config_default(void) { return new bf_config{}; }

bf_config* bf_config_load(const char* path) {
    try {
        return new bf_config{bohmflow::load_config(path ? path : "")};
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return nullptr;
    }
}

bf_config* bf_config_parse(const char* text) {
    try {
        return new bf_config{bohmflow::parse_config(text ? text : "")};
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return nullptr;
    }
}

void bf_config_free(bf_config* cfg) { delete cfg; }

bf_status bf_config_set(bf_config* cfg, const char* key, const char* value) {
    if (!cfg || !key || !value) {
        g_last_error = "bf_config_set: null argument";
        return BF_ERR_CONFIG;
    }
    try {
        cfg->cfg.set(key, value);
        return BF_OK;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return static_cast<bf_status>(code_for(e));
    }
}

char* bf_config_serialize(const bf_config* cfg) {
    if (!cfg) return nullptr;
    return dup_string(cfg->cfg.serialize());
}

bf_status bf_run(const bf_config* cfg, int threads, char** report) {
    if (!cfg) {
        g_last_error = "bf_run: null config";
        return BF_ERR_CONFIG;
    }
    return finish(bohmflow::cmd_run(cfg->cfg, threads), report);
}

bf_status bf_fields(const bf_config* cfg, int nx, int nz, double time,
                    int threads, char** report) {
    if (!cfg) {
        g_last_error = "bf_fields: null config";
        return BF_ERR_CONFIG;
    }
    return finish(bohmflow::cmd_fields(cfg->cfg, nx, nz, time, threads),
                  report);
}

bf_status bf_sweep(const bf_config* cfg, const char* param,
                   const double* values, size_t n_values, int threads,
                   char** report) {
    if (!cfg || !param) {
        g_last_error = "bf_sweep: null argument";
        return BF_ERR_CONFIG;
    }
    std::vector<double> vals(values, values + n_values);
    return finish(bohmflow::cmd_sweep(cfg->cfg, param, vals, threads), report);
}

bf_scenario* bf_scenario_create(const bf_config* cfg) {
    if (!cfg) {
        g_last_error = "bf_scenario_create: null config";
        return nullptr;
    }
    try {
        return new bf_scenario{cfg->cfg.build_scenario()};
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return nullptr;
    }
}

void bf_scenario_free(bf_scenario* s) { delete s; }

int bf_scenario_n_aux(const bf_scenario* s) {
    return s ? s->sc.state().n_aux() : -1;
}

bf_status bf_detector_probabilities(const bf_scenario* s, double* p_d1,
                                    double* p_d2) {
    if (!s || !p_d1 || !p_d2) {
        g_last_error = "bf_detector_probabilities: null argument";
        return BF_ERR_CONFIG;
    }
    try {
        const auto p = bohmflow::detector_probabilities(s->sc);
        *p_d1 = p.p_d1;
        *p_d2 = p.p_d2;
        return BF_OK;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return static_cast<bf_status>(code_for(e));
    }
}

bf_status bf_field_sample(const bf_scenario* s, const double* q, size_t q_len,
                          double t, double* out, size_t out_len) {
    if (!s || !q || !out) {
        g_last_error = "bf_field_sample: null argument";
        return BF_ERR_CONFIG;
    }
    try {
        const int n_aux = s->sc.state().n_aux();
        if (q_len != static_cast<size_t>(2 + n_aux))
            throw bohmflow::InvalidParameterError(
                "bf_field_sample: q_len must be 2 + n_aux");
        if (out_len < 6)
            throw bohmflow::InvalidParameterError(
                "bf_field_sample: out_len must be >= 6");
        bohmflow::ConfigPoint point;
        point.atom = {q[0], q[1]};
        for (int l = 0; l < n_aux; ++l)
            point.aux[static_cast<size_t>(l)] = q[2 + l];

        double p = 0.0, jx = 0.0, jz = 0.0, jaux = 0.0, qt = 0.0, resid = 0.0;
        bool degenerate = false;
        for (size_t k = 0; k < s->sc.components.size(); ++k) {
            const bohmflow::FieldEvaluator fields(s->sc.components[k]);
            const double w = s->sc.weights[k];
            const auto fs = fields.sample(point, t, true);
            p += w * fs.p;
            jx += w * fs.j.atom.x;
            jz += w * fs.j.atom.z;
            if (n_aux > 0) jaux += w * fs.j.aux[0];
            if (fs.degenerate) {
                degenerate = true;
            } else {
                qt += w * fs.q_total;
                resid += w * fields.continuity_residual(point, t, 1e-3);
            }
        }
        out[0] = p;
        out[1] = jx;
        out[2] = jz;
        out[3] = jaux;
        out[4] = degenerate ? std::nan("") : qt;
        out[5] = degenerate ? std::nan("") : resid;
        return BF_OK;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return static_cast<bf_status>(code_for(e));
    }
}

bf_status bf_plane_flux(const bf_scenario* s, double t, double* flux) {
    if (!s || !flux) {
        g_last_error = "bf_plane_flux: null argument";
        return BF_ERR_CONFIG;
    }
    try {
        *flux = bohmflow::plane_flux(s->sc, t);
        return BF_OK;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return static_cast<bf_status>(code_for(e));
    }
}

void bf_string_free(char* s) { std::free(s); }

} // extern "C"

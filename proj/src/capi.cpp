#include "tow/tow.h"

#include <cstring>
#include <memory>
#include <new>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "tow/dpp.hpp"
#include "tow/grid.hpp"
#include "tow/lab.hpp"
#include "tow/params.hpp"

struct tow_params {
  tow::GameParams value;
};

struct tow_domain {
  std::unique_ptr<tow::GridDomain> value;
};

struct tow_field {
  const tow_domain* domain = nullptr;
  tow::GridField value;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = new (std::nothrow) char[s.size() + 1];
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Maps the C++ exception model onto status codes: invalid_argument is a
// config/argument error, runtime_error a numerical failure.
template <typename Fn>
tow_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return TOW_ERR_INVALID_ARG;
  } catch (const std::runtime_error& e) {
    g_last_error = e.what();
    return TOW_ERR_NUMERICAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TOW_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return TOW_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* tow_status_name(tow_status s) {
  switch (s) {
    case TOW_OK:
      return "ok";
    case TOW_ERR_INVALID_ARG:
      return "invalid argument";
    case TOW_ERR_NUMERICAL:
      return "numerical failure";
    case TOW_ERR_VERDICT:
      return "verdict failed";
    case TOW_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* tow_last_error(void) { return g_last_error.c_str(); }

void tow_string_free(char* s) { delete[] s; }

tow_status tow_params_create(double p, int n, double eps, tow_params** out) {
  return guarded([&]() -> tow_status {
    if (!out) throw std::invalid_argument("out pointer is null");
    *out = new tow_params{tow::make_params(p, n, eps)};
    return TOW_OK;
  });
}

void tow_params_destroy(tow_params* p) { delete p; }

double tow_params_alpha(const tow_params* p) { return p ? p->value.alpha : 0.0; }

double tow_params_beta(const tow_params* p) { return p ? p->value.beta : 0.0; }

tow_status tow_domain_create(const char* shape_spec, double h, double eps, tow_domain** out) {
  return guarded([&]() -> tow_status {
    if (!shape_spec || !out) throw std::invalid_argument("null pointer argument");
    auto d = std::make_unique<tow_domain>();
    d->value = std::make_unique<tow::GridDomain>(tow::parse_shape(shape_spec), h, eps);
    *out = d.release();
    return TOW_OK;
  });
}

void tow_domain_destroy(tow_domain* d) { delete d; }

long tow_domain_node_count(const tow_domain* d) {
  return d ? static_cast<long>(d->value->node_count()) : 0;
}

int tow_domain_dim(const tow_domain* d) { return d ? d->value->dim() : 0; }

tow_status tow_solve(const tow_domain* d, const tow_params* p, const char* boundary_spec,
                     double tolerance, long max_iters, tow_field** out_field,
                     long* out_iterations, double* out_residual) {
  return guarded([&]() -> tow_status {
    if (!d || !p || !boundary_spec || !out_field)
      throw std::invalid_argument("null pointer argument");
    const tow::GridField boundary =
        tow::make_boundary_field(*d->value, boundary_spec, d->value->dim());
    tow::SolveReport rep =
        tow::solve_dpp(*d->value, boundary, p->value, tolerance, max_iters);
    if (out_iterations) *out_iterations = rep.iterations;
    if (out_residual) *out_residual = rep.final_residual;
    if (!rep.converged) throw std::runtime_error("solver did not reach the requested residual");
    auto f = std::make_unique<tow_field>();
    f->domain = d;
    f->value = std::move(rep.solution);
    *out_field = f.release();
    return TOW_OK;
  });
}

void tow_field_destroy(tow_field* f) { delete f; }

tow_status tow_field_value_at(const tow_field* f, const double* point, int dim, double* out) {
  return guarded([&]() -> tow_status {
    if (!f || !point || !out) throw std::invalid_argument("null pointer argument");
    const tow::GridDomain& dom = *f->domain->value;
    if (dim != dom.dim()) throw std::invalid_argument("point dimension does not match domain");
    tow::Point x = tow::pt_zero();
    for (int i = 0; i < dim; ++i) x[i] = point[i];
    *out = f->value.values[dom.nearest_node(x)];
    return TOW_OK;
  });
}

tow_status tow_field_to_json(const tow_field* f, char** out_json) {
  return guarded([&]() -> tow_status {
    if (!f || !out_json) throw std::invalid_argument("null pointer argument");
    *out_json = dup_string(tow::field_to_json_text(f->value));
    if (!*out_json) throw std::runtime_error("out of memory");
    return TOW_OK;
  });
}

tow_status tow_run_json(const char* config_json, char** out_report) {
  return guarded([&]() -> tow_status {
    if (!config_json || !out_report) throw std::invalid_argument("null pointer argument");
    const std::string report = tow::run_experiment_json(config_json);
    *out_report = dup_string(report);
    if (!*out_report) throw std::runtime_error("out of memory");
    const auto parsed = nlohmann::json::parse(report);
    if (parsed.contains("pass") && !parsed.at("pass").get<bool>()) return TOW_ERR_VERDICT;
    return TOW_OK;
  });
}

} /* extern "C" */

#include "rqt/commands.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numbers>
#include <random>
#include <thread>
#include <variant>

#include <json.hpp>

#include "rqt/errors.hpp"
#include "rqt/weyl.hpp"

namespace rqt {

namespace {

using Json = nlohmann::ordered_json;
using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string render_csv(const Table& t) {
  std::string out;
  for (std::size_t c = 0; c < t.columns.size(); ++c) out += (c ? "," : "") + t.columns[c];
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += std::holds_alternative<double>(row[c]) ? format_number(std::get<double>(row[c]))
                                                    : std::get<std::string>(row[c]);
    }
    out += '\n';
  }
  return out;
}

Json table_rows_json(const Table& t) {
  Json rows = Json::array();
  for (const auto& row : t.rows) {
    Json r = Json::object();
    for (std::size_t c = 0; c < row.size(); ++c)
      std::visit([&](const auto& v) { r[t.columns[c]] = v; }, row[c]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string render(const Table& t, OutputFormat f, Json meta) {
  if (f == OutputFormat::Csv) return render_csv(t);
  Json doc = Json::object();
  doc["meta"] = std::move(meta);
  doc["rows"] = table_rows_json(t);
  return doc.dump(2) + "\n";
}

Json detector_json(const DetectorConfig& d) {
  return Json{{"position", {d.position.x(), d.position.y(), d.position.z()}},
              {"coupling_time", d.coupling_time},
              {"coupling_strength", d.coupling_strength},
              {"smearing_width", d.smearing_width},
              {"gap", d.gap},
              {"monopole_phase", d.monopole_phase}};
}

Json meta_json(const std::string& command, const RunConfig& cfg, std::uint64_t seed) {
  Json m = Json::object();
  m["command"] = command;
  m["seed"] = seed;
  m["scheme"] = to_string(cfg.teleport.scheme);
  m["epsilon"] = cfg.epsilon;
  m["tolerance"] = cfg.tolerance;
  m["detector_a"] = detector_json(cfg.teleport.a);
  m["detector_b"] = detector_json(cfg.teleport.b);
  if (cfg.sweep) {
    m["sweep"] = Json{{"parameter", cfg.sweep->parameter},
                      {"start", cfg.sweep->start},
                      {"stop", cfg.sweep->stop},
                      {"steps", cfg.sweep->steps}};
  }
  if (cfg.target_e_ab) m["target_e_ab"] = *cfg.target_e_ab;
  return m;
}

// Evaluates f(0..n-1) on up to `jobs` threads; results keep index order.
template <typename T, typename F>
std::vector<T> parallel_map(int n, int jobs, F f) {
  std::vector<std::optional<T>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        slots[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min(jobs, n));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::vector<T> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

double axis_value(const RunConfig& cfg, int i) { return cfg.sweep ? cfg.sweep->value(i) : 0.0; }

std::uint64_t effective_seed(const RunConfig& cfg, const CommandOptions& opts) {
  return opts.seed.value_or(cfg.teleport.seed);
}

OutputFormat effective_format(const RunConfig& cfg, const CommandOptions& opts) {
  return opts.format.value_or(cfg.format);
}

}  // namespace

int sweep_size(const RunConfig& cfg) { return cfg.sweep ? cfg.sweep->steps : 1; }

TeleportConfig sweep_point(const RunConfig& cfg, int i) {
  TeleportConfig t = cfg.teleport;
  if (cfg.sweep) set_parameter(t, cfg.sweep->parameter, cfg.sweep->value(i));
  try {
    t.a.validate();
    t.b.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("sweep point " + std::to_string(i) + ": " + e.what());
  }
  if (cfg.target_e_ab) {
    DetectorConfig unit = t.a;
    unit.coupling_strength = 1.0;
    const double e1 = smeared_causal_propagator(unit, t.b, t.quadrature);
    const double scale = *cfg.target_e_ab / e1;
    if (e1 == 0.0 || !std::isfinite(scale) || scale < 0.0)
      throw ConfigError("target_e_ab cannot be reached with a non-negative coupling at sweep point " +
                        std::to_string(i));
    t.a.coupling_strength = scale;
  }
  return t;
}

std::vector<CapacityRow> capacity_rows(const RunConfig& cfg, int jobs) {
  return parallel_map<CapacityRow>(sweep_size(cfg), jobs, [&](int i) {
    const TeleportConfig t = sweep_point(cfg, i);
    const CorrelatorSet corr = correlators(t.a, t.b, t.quadrature);
    const ChannelModel ch = build_channel(t.a, t.b, t.rho_b0, corr);
    const std::vector<DensityOperator> outs = {
        rqt::apply(ch, bit_state(0, t.a.monopole_phase)),
        rqt::apply(ch, bit_state(1, t.a.monopole_phase))};
    const OneShotBounds bounds = one_shot_bounds(outs, cfg.epsilon, cfg.one_shot_grid);
    return CapacityRow{axis_value(cfg, i),
                       corr.e_ab,
                       corr.nu_b,
                       classical_capacity_closed_form(corr),
                       holevo_numeric(ch).chi,
                       bounds.c_min,
                       bounds.c_max};
  });
}

CommandResult cmd_capacity(const RunConfig& cfg, const CommandOptions& opts) {
  Table t;
  t.columns = {"axis_value", "e_ab", "nu_b", "capacity_closed_form", "holevo_numeric", "c_min",
               "c_max"};
  for (const auto& r : capacity_rows(cfg, opts.jobs))
    t.rows.push_back({r.axis_value, r.e_ab, r.nu_b, r.capacity_closed_form, r.holevo_numeric,
                      r.c_min, r.c_max});
  return {render(t, effective_format(cfg, opts), meta_json("capacity", cfg, effective_seed(cfg, opts))),
          kExitOk};
}

CommandResult cmd_teleport(const RunConfig& cfg, const CommandOptions& opts) {
  TeleportConfig t = sweep_point(cfg, 0);
  t.seed = effective_seed(cfg, opts);
  const TeleportReport rep = run_teleport(t);

  if (effective_format(cfg, opts) == OutputFormat::Csv) {
    Table tab;
    tab.columns = {"average_fidelity", "haar_average_fidelity", "capacity_closed_form", "holevo",
                   "p_success", "causal_status", "bob_mixedness", "e_ab", "nu_b"};
    std::vector<Cell> row = {rep.average_fidelity, rep.haar_average_fidelity,
                             rep.capacity_closed_form, rep.holevo, rep.p_success,
                             to_string(rep.causal_status), rep.bob_mixedness, rep.corr.e_ab,
                             rep.corr.nu_b};
    for (int m = 0; m < 4; ++m)
      for (int g = 0; g < 4; ++g) {
        tab.columns.push_back("p_" + message_label(g) + "_given_" + message_label(m));
        row.push_back(rep.confusion(m, g));
      }
    tab.rows.push_back(std::move(row));
    return {render_csv(tab), kExitOk};
  }

  auto matrix = [](const Eigen::Matrix4d& m) {
    Json rows = Json::array();
    for (int i = 0; i < 4; ++i) rows.push_back({m(i, 0), m(i, 1), m(i, 2), m(i, 3)});
    return rows;
  };
  Json report = Json::object();
  report["confusion"] = matrix(rep.confusion);
  report["per_outcome_fidelity"] = matrix(rep.per_outcome_fidelity);
  report["average_fidelity"] = rep.average_fidelity;
  report["haar_average_fidelity"] = rep.haar_average_fidelity;
  report["capacity_closed_form"] = rep.capacity_closed_form;
  report["holevo"] = rep.holevo;
  report["p_success"] = rep.p_success;
  report["causal_status"] = to_string(rep.causal_status);
  report["bob_mixedness"] = rep.bob_mixedness;
  report["correlators"] = Json{{"w_aa", rep.corr.w_aa},
                               {"w_bb", rep.corr.w_bb},
                               {"re_w_ab", rep.corr.re_w_ab},
                               {"e_ab", rep.corr.e_ab},
                               {"nu_b", rep.corr.nu_b}};
  report["noiseless_side_channel"] = t.noiseless_side_channel;
  RunConfig effective = cfg;
  effective.teleport = t;
  Json doc = Json::object();
  doc["meta"] = meta_json("teleport", effective, t.seed);
  doc["report"] = std::move(report);
  return {doc.dump(2) + "\n", kExitOk};
}

CommandResult cmd_causality_scan(const RunConfig& cfg, const CommandOptions& opts) {
  Table t;
  t.columns = {"axis_value",   "dt",   "separation",           "causal_status",
               "e_ab",         "nu_b", "capacity_closed_form", "signalling"};
  struct Row {
    double axis, dt, r;
    CausalStatus status;
    CorrelatorSet corr;
    double capacity, signalling;
  };
  const auto rows = parallel_map<Row>(sweep_size(cfg), opts.jobs, [&](int i) {
    const TeleportConfig p = sweep_point(cfg, i);
    const CorrelatorSet corr = correlators(p.a, p.b, p.quadrature);
    const ChannelModel ch = build_channel(p.a, p.b, p.rho_b0, corr);
    const double signalling =
        trace_norm(rqt::apply(ch, bit_state(0, p.a.monopole_phase)).matrix() -
                   rqt::apply(ch, bit_state(1, p.a.monopole_phase)).matrix());
    return Row{axis_value(cfg, i),
               p.b.coupling_time - p.a.coupling_time,
               (p.a.position - p.b.position).norm(),
               causality_guard(p.a, p.b),
               corr,
               classical_capacity_closed_form(corr),
               signalling};
  });
  for (const auto& r : rows)
    t.rows.push_back({r.axis, r.dt, r.r, to_string(r.status), r.corr.e_ab, r.corr.nu_b, r.capacity,
                      r.signalling});
  return {render(t, effective_format(cfg, opts),
                 meta_json("causality-scan", cfg, effective_seed(cfg, opts))),
          kExitOk};
}

CommandResult cmd_oracle_check(const RunConfig& cfg, const CommandOptions& opts) {
  const std::uint64_t seed = effective_seed(cfg, opts);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<CorrelatorSet> draws;
  for (int n = 0; n < cfg.oracle_draws; ++n) {
    const double w_aa = 2.0 * u(rng), w_bb = 2.0 * u(rng);
    const double re = (2.0 * u(rng) - 1.0) * std::sqrt(w_aa * w_bb);
    // Every fourth draw sits in the commuting limit.
    const double e = n % 4 == 3 ? 0.0 : (2.0 * u(rng) - 1.0) * std::numbers::pi;
    draws.push_back(CorrelatorSet::from_parts(w_aa, w_bb, re, e));
  }

  Table t;
  t.columns = {"draw",  "w_aa", "w_bb", "re_w_ab", "e_ab", "coefficient_deviation",
               "product_to_sum_deviation", "passed"};
  struct Row {
    double coeff, p2s;
    bool ok;
  };
  const auto rows = parallel_map<Row>(cfg.oracle_draws, opts.jobs, [&](int n) {
    ProductToSumOptions p;
    p.seed = seed + static_cast<std::uint64_t>(n);
    p.flip_propagator_sign = opts.inject_sign_error;
    const auto coeff = check_coefficient_identities(draws[n]);
    const auto p2s = verify_product_to_sum(draws[n], p);
    return Row{coeff.max_deviation, p2s.max_deviation, coeff.max_deviation <= 1e-10 && p2s.passed};
  });
  bool all = true;
  for (int n = 0; n < cfg.oracle_draws; ++n) {
    const auto& c = draws[n];
    all = all && rows[n].ok;
    t.rows.push_back({static_cast<double>(n), c.w_aa, c.w_bb, c.re_w_ab, c.e_ab, rows[n].coeff,
                      rows[n].p2s, std::string(rows[n].ok ? "true" : "false")});
  }
  Json meta = meta_json("oracle-check", cfg, seed);
  meta["draws"] = cfg.oracle_draws;
  meta["inject_sign_error"] = opts.inject_sign_error;
  meta["passed"] = all;
  return {render(t, effective_format(cfg, opts), meta), all ? kExitOk : kExitOracle};
}

}  // namespace rqt

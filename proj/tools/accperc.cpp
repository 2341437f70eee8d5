#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "accperc/analytics.hpp"
#include "accperc/bounds.hpp"
#include "accperc/errors.hpp"
#include "accperc/montecarlo.hpp"
#include "accperc/path_enumeration.hpp"
#include "accperc/table.hpp"

using namespace accperc;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kUsage = 2, kCap = 3, kBudget = 4 };

struct Flags {
  std::vector<int> L;
  std::vector<int> H;
  std::optional<double> alpha;
  std::string alpha_grid;
  std::string x;
  std::string x_grid;
  std::string mode = "corner";
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::optional<int> max_p;
  std::uint64_t budget = 0;
  std::string format = "csv";
  std::string out;
  bool direct = false;
  bool list = false;
  std::string table;
  std::string dump;
};

/// "a:b:step" (inclusive) or a comma list.
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    double a, b, step;
    char c1, c2;
    std::istringstream in(text);
    if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || !in.eof())
      throw std::invalid_argument("grid must look like a:b:step, got '" + text + "'");
    if (!(step > 0.0) || b < a) throw std::invalid_argument("grid needs step > 0 and b >= a");
    const auto n = static_cast<long>(std::floor((b - a) / step + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(std::min(b, a + i * step));
    return out;
  }
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad number '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty grid");
  return out;
}

std::vector<double> x_values(const Flags& f, const std::string& fallback) {
  if (!f.x_grid.empty()) return parse_grid(f.x_grid);
  if (!f.x.empty()) return parse_grid(f.x);
  if (fallback.empty()) throw std::invalid_argument("--x or --x-grid is required");
  return parse_grid(fallback);
}

std::vector<double> alpha_values(const Flags& f, const std::string& fallback) {
  if (!f.alpha_grid.empty()) return parse_grid(f.alpha_grid);
  if (f.alpha) return {*f.alpha};
  if (fallback.empty()) throw std::invalid_argument("--alpha or --alpha-grid is required");
  return parse_grid(fallback);
}

std::vector<int> dims(const Flags& f, std::vector<int> fallback = {}) {
  if (!f.L.empty()) return f.L;
  if (fallback.empty()) throw std::invalid_argument("--L is required");
  return fallback;
}

std::vector<int> hammings(const Flags& f, int L) {
  if (f.H.empty()) return {L};
  for (int H : f.H)
    if (H < 0 || H > L) throw std::invalid_argument("H must lie in 0..L");
  return f.H;
}

SearchOptions search_options(const Flags& f) {
  SearchOptions o;
  o.max_p = f.max_p;
  o.budget_nodes = f.budget;
  o.workers = f.workers;
  return o;
}

void append_counts(ResultTable& t, const IntegerTable& table) {
  for (int p = 0; p <= table.max_p(); ++p)
    t.add_row({Cell::integer(table.dim), Cell::integer(table.hamming), Cell::integer(p),
               Cell::decimal(table.at(p))});
}

ResultTable cmd_enumerate(const Flags& f) {
  ResultTable t{{"L", "H", "p", "count"}, {}};
  for (int L : dims(f))
    for (int H : hammings(f, L)) append_counts(t, count_saw(L, H, search_options(f)));
  return t;
}

ResultTable cmd_mset(const Flags& f) {
  if (f.list) {
    ResultTable t{{"L", "H", "p", "path"}, {}};
    for (int L : dims(f))
      for (int H : hammings(f, L))
        for (const auto& path : list_mset(L, H))
          t.add_row({Cell::integer(L), Cell::integer(H),
                     Cell::integer(backstep_count(path, EndpointSpec(L, H))),
                     Cell::text(path.to_string())});
    return t;
  }
  ResultTable t{{"L", "H", "p", "count"}, {}};
  for (int L : dims(f))
    for (int H : hammings(f, L)) append_counts(t, mset_counts(L, H));
  return t;
}

ResultTable cmd_bounds(const Flags& f) {
  if (!f.table.empty()) {
    const int max_p = f.max_p.value_or(6);
    if (f.table == "majo") {
      ResultTable t{{"L", "H", "p", "count"}, {}};
      for (int L : dims(f))
        for (int H : hammings(f, L)) append_counts(t, majo_table(L, H, max_p));
      return t;
    }
    if (f.table == "mino") {
      ResultTable t{{"L", "H", "p", "count"}, {}};
      for (int L : dims(f))
        for (int H : hammings(f, L)) {
          const auto table = mino_tilde_table(L, H, max_p);
          for (int p = 0; p <= table.max_p(); ++p)
            t.add_row({Cell::integer(L), Cell::integer(H), Cell::integer(p),
                       Cell::rational(table.at(p))});
        }
      return t;
    }
    throw std::invalid_argument("--table must be majo or mino");
  }
  ResultTable t{{"L", "H", "x", "lower", "upper", "log_lower", "log_upper"}, {}};
  for (int L : dims(f))
    for (int H : hammings(f, L))
      for (double x : x_values(f, "")) {
        const auto b = eval_bounds(L, H, x);
        t.add_row({Cell::integer(L), Cell::integer(H), Cell::real(x), Cell::real(b.lower),
                   Cell::real(b.upper), Cell::real(b.log_lower), Cell::real(b.log_upper)});
      }
  return t;
}

ResultTable cmd_phi(const Flags& f) {
  ResultTable t{{"L", "k", "coefficient"}, {}};
  for (int L : dims(f)) {
    const auto phi = phi_polynomial(L);
    for (long k = 0; k <= phi.degree(); ++k)
      if (phi.coeff(k) != 0)
        t.add_row({Cell::integer(L), Cell::integer(static_cast<std::int64_t>(k)),
                   Cell::decimal(phi.coeff(k))});
  }
  return t;
}

ResultTable cmd_albounds(const Flags& f) {
  ResultTable t{{"L", "d_prev", "lower", "upper"}, {}};
  for (int L : dims(f)) {
    const auto b = aL_bounds(L);
    t.add_row({Cell::integer(L), Cell::integer(static_cast<std::int64_t>(b.d_prev)),
               Cell::decimal(b.lower), Cell::decimal(b.upper)});
  }
  return t;
}

ResultTable cmd_critical(const Flags& f) {
  ResultTable t{{"alpha", "x_star", "residual", "degenerate"}, {}};
  for (const auto& c : critical_curve(alpha_values(f, "")))
    t.add_row({Cell::real(c.alpha), Cell::real(c.x_star), Cell::real(c.residual),
               Cell::integer(c.degenerate ? 1 : 0)});
  return t;
}

ResultTable cmd_figure2(const Flags& f) {
  ResultTable t{{"alpha", "x_star"}, {}};
  for (const auto& c : critical_curve(alpha_values(f, "0.01:1:0.01")))
    t.add_row({Cell::real(c.alpha), Cell::real(c.x_star)});
  return t;
}

ResultTable cmd_expect(const Flags& f) {
  ResultTable t{{"L", "H", "x", "exact_theta", "lower", "upper", "minimal_path", "x_c"}, {}};
  const auto xs = x_values(f, "");
  for (int L : dims(f))
    for (int H : hammings(f, L)) {
      std::optional<IntegerTable> exact;
      if (L <= 5 && H >= 1) exact = count_saw(L, H, search_options(f));
      for (double x : xs) {
        const auto b = eval_bounds(L, H, x);
        t.add_row({Cell::integer(L), Cell::integer(H), Cell::real(x),
                   exact ? Cell::real(expected_theta_from_counts(*exact, x)) : Cell::text("NA"),
                   Cell::real(b.lower), Cell::real(b.upper),
                   Cell::real(minimal_path_expectation(H, x)), Cell::real(x_c(H))});
      }
    }
  return t;
}

ResultTable cmd_averaged(const Flags& f) {
  ResultTable t{{"L", "x", "exact_sum", "closed_form", "log_exact_sum", "log_closed_form"}, {}};
  for (int L : dims(f))
    for (double x : x_values(f, "")) {
      const auto a = averaged_expectation(L, x);
      t.add_row({Cell::integer(L), Cell::real(x), Cell::real(a.exact_sum),
                 Cell::real(a.closed_form), Cell::real(a.log_exact_sum),
                 Cell::real(a.log_closed_form)});
    }
  return t;
}

ResultTable cmd_convergence(const Flags& f) {
  ResultTable t{{"L", "H", "x", "lower_root", "upper_root", "limit"}, {}};
  const auto xs = x_values(f, "0.05,0.2,0.5");
  const double alpha = f.alpha.value_or(1.0);
  for (int L : dims(f, {100, 200, 300, 400})) {
    const std::vector<int> hs =
        f.H.empty() ? std::vector<int>{static_cast<int>(std::lround(alpha * L))} : hammings(f, L);
    for (int H : hs)
      for (double x : xs) {
        const auto d = limit_diagnostic(L, H, x);
        t.add_row({Cell::integer(L), Cell::integer(H), Cell::real(x), Cell::real(d.lower_root),
                   Cell::real(d.upper_root), Cell::real(d.limit)});
      }
  }
  return t;
}

std::vector<std::string> simulation_columns(bool direct, bool reference) {
  std::vector<std::string> c = {"L",       "mode",  "H_or_NA", "x",     "n_trials",
                                "n_accessible", "p_hat", "std_err", "ci_lo", "ci_hi",
                                "mean_theta",   "saturated_frac", "root_seed"};
  if (direct) {
    c.push_back("mean_theta_direct");
    c.push_back("theta_direct_std_err");
  }
  if (reference) c.push_back("x_star_1");
  return c;
}

std::vector<Cell> simulation_row(const SimulationSummary& s, bool direct, bool reference,
                                 double x_star_1) {
  std::vector<Cell> r = {
      Cell::integer(s.L),
      Cell::text(s.mode.name()),
      s.mode.kind == Placement::UniformRandom
          ? Cell::text("NA")
          : Cell::integer(s.mode.kind == Placement::FixedHamming ? s.mode.hamming : s.L),
      s.x ? Cell::real(*s.x) : Cell::text("uniform"),
      Cell::integer(s.n_trials),
      Cell::integer(s.n_accessible),
      Cell::real(s.p_hat),
      Cell::real(s.std_err),
      Cell::real(s.ci_lo),
      Cell::real(s.ci_hi),
      Cell::real(s.mean_theta),
      Cell::real(s.saturated_frac),
      Cell::integer(s.root_seed)};
  if (direct) {
    r.push_back(Cell::real(s.mean_theta_direct.value_or(std::nan(""))));
    r.push_back(Cell::real(s.theta_direct_std_err.value_or(std::nan(""))));
  }
  if (reference) r.push_back(Cell::real(x_star_1));
  return r;
}

std::vector<PlacementMode> placements(const Flags& f, int L) {
  const auto kind = PlacementMode::parse(f.mode, 0).kind;
  if (kind != Placement::FixedHamming) {
    if (!f.H.empty()) throw std::invalid_argument("--H applies to --mode fixedH only");
    return {PlacementMode::parse(f.mode, 0)};
  }
  if (f.H.empty()) throw std::invalid_argument("--mode fixedH needs --H");
  std::vector<PlacementMode> out;
  for (int H : hammings(f, L)) out.push_back(PlacementMode::fixed_hamming(H));
  return out;
}

void dump_first_landscape(const Flags& f, int L, const PlacementMode& mode, StartFitness x) {
  std::ofstream out(f.dump, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + f.dump);
  write_landscape(out, generate(L, mode, x, {f.seed, 0}));
}

ResultTable simulate_rows(const Flags& f, const std::vector<int>& Ls, const std::string& x_fallback,
                          bool reference) {
  ResultTable t{simulation_columns(f.direct, reference), {}};
  const bool uniform_start = f.x_grid.empty() && f.x == "uniform";
  const auto xs = uniform_start ? std::vector<double>{} : x_values(f, x_fallback);
  const double x_star_1 = critical_x(1.0).x_star;
  bool dumped = f.dump.empty();
  for (int L : Ls)
    for (const auto& mode : placements(f, L)) {
      SimulationConfig cfg;
      cfg.L = L;
      cfg.mode = mode;
      cfg.n_trials = f.trials;
      cfg.root_seed = f.seed;
      cfg.workers = f.workers;
      cfg.direct = f.direct;
      if (!dumped) {
        dump_first_landscape(f, L, mode, uniform_start ? StartFitness{} : StartFitness{xs.front()});
        dumped = true;
      }
      if (uniform_start) {
        t.add_row(simulation_row(estimate(cfg), f.direct, reference, x_star_1));
        continue;
      }
      for (const auto& s : sweep_start_fitness(cfg, xs))
        t.add_row(simulation_row(s, f.direct, reference, x_star_1));
    }
  return t;
}

ResultTable cmd_simulate(const Flags& f) { return simulate_rows(f, dims(f), "", false); }

ResultTable cmd_figure1(const Flags& f) {
  return simulate_rows(f, dims(f, {8, 12, 16, 20, 24}), "0:0.5:0.05", true);
}

void add_dims(CLI::App* cmd, Flags& f) {
  cmd->add_option("--L", f.L, "Hypercube dimension(s), comma separated")->delimiter(',');
}
void add_hamming(CLI::App* cmd, Flags& f) {
  cmd->add_option("--H", f.H, "Hamming distance(s) of the endpoint; default L")->delimiter(',');
}
void add_x(CLI::App* cmd, Flags& f) {
  cmd->add_option("--x", f.x, "Start fitness");
  cmd->add_option("--x-grid", f.x_grid, "Start fitness grid a:b:step or comma list");
}
void add_alpha(CLI::App* cmd, Flags& f) {
  cmd->add_option("--alpha", f.alpha, "H/L ratio");
  cmd->add_option("--alpha-grid", f.alpha_grid, "alpha grid a:b:step or comma list");
}
void add_search(CLI::App* cmd, Flags& f) {
  cmd->add_option("--max-p", f.max_p, "Largest number of backsteps");
  cmd->add_option("--budget-leaves", f.budget, "Abort after this many search nodes (0: none)");
  cmd->add_option("--workers", f.workers, "Worker threads")->check(CLI::Range(1u, 1024u));
}
void add_simulation(CLI::App* cmd, Flags& f) {
  cmd->add_option("--mode", f.mode, "Placement of the fittest site")
      ->check(CLI::IsMember({"corner", "fixedH", "uniform"}));
  cmd->add_option("--trials", f.trials, "Number of trials")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", f.seed, "Root seed");
  cmd->add_option("--workers", f.workers, "Worker threads")->check(CLI::Range(1u, 1024u));
  cmd->add_flag("--direct", f.direct, "Also count shortest open paths");
  cmd->add_option("--dump-landscape", f.dump, "Write the first trial's landscape to FILE");
}

int run(int argc, char** argv) {
  CLI::App app{"Accessibility percolation on the hypercube"};
  app.require_subcommand(1);
  Flags f;
  app.add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", f.out, "Write output to FILE instead of standard output");
  app.fallthrough();

  using Handler = ResultTable (*)(const Flags&);
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto sub = [&](const char* name, const char* help, Handler h) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->fallthrough();
    commands.emplace_back(cmd, h);
    return cmd;
  };

  auto* enumerate = sub("enumerate", "Exact self-avoiding path counts a_{L,H,p}", cmd_enumerate);
  add_dims(enumerate, f);
  add_hamming(enumerate, f);
  add_search(enumerate, f);

  auto* mset = sub("mset", "Counts or listing of the m-set paths", cmd_mset);
  add_dims(mset, f);
  add_hamming(mset, f);
  mset->add_flag("--list", f.list, "List the paths instead of counting");

  auto* bounds = sub("bounds", "Bound evaluations or the M / m~ tables", cmd_bounds);
  add_dims(bounds, f);
  add_hamming(bounds, f);
  add_x(bounds, f);
  bounds->add_option("--table", f.table, "Dump a table: majo or mino");
  bounds->add_option("--max-p", f.max_p, "Largest p in --table (default 6)");

  auto* phi = sub("phi", "Coefficients of phi_L", cmd_phi);
  add_dims(phi, f);

  auto* albounds = sub("albounds", "Lower and upper bounds on a_L", cmd_albounds);
  add_dims(albounds, f);

  auto* critical = sub("critical", "Critical start fitness x*_alpha", cmd_critical);
  add_alpha(critical, f);

  auto* expect = sub("expect", "Exact and bounding expectations of Theta", cmd_expect);
  add_dims(expect, f);
  add_hamming(expect, f);
  add_x(expect, f);
  add_search(expect, f);

  auto* averaged = sub("averaged", "Expectation averaged over a uniform fittest site", cmd_averaged);
  add_dims(averaged, f);
  add_x(averaged, f);

  auto* simulate = sub("simulate", "Monte Carlo estimate of P(Theta >= 1)", cmd_simulate);
  add_dims(simulate, f);
  add_hamming(simulate, f);
  add_x(simulate, f);
  add_simulation(simulate, f);

  auto* figure1 = sub("figure1", "Accessibility probability against x for several L", cmd_figure1);
  add_dims(figure1, f);
  add_hamming(figure1, f);
  add_x(figure1, f);
  add_simulation(figure1, f);

  auto* figure2 = sub("figure2", "x*_alpha against alpha", cmd_figure2);
  add_alpha(figure2, f);

  auto* convergence = sub("convergence", "L-th roots of the bounds against the limit",
                          cmd_convergence);
  add_dims(convergence, f);
  add_hamming(convergence, f);
  add_x(convergence, f);
  convergence->add_option("--alpha", f.alpha, "H/L ratio when --H is absent (default 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  Handler handler = nullptr;
  for (const auto& [cmd, h] : commands)
    if (cmd->parsed()) handler = h;

  const auto t0 = std::chrono::steady_clock::now();
  const ResultTable table = handler(f);
  const auto format = f.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
  if (f.out.empty()) {
    write_table(std::cout, table, format);
  } else {
    std::ofstream out(f.out);
    if (!out) throw std::runtime_error("cannot open " + f.out);
    write_table(out, table, format);
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::fprintf(stderr, "wall_time_s=%.3f\n", wall);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CapExceeded& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kCap;
  } catch (const BudgetExceeded& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kBudget;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFailure;
  }
}

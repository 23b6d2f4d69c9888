// Command-line surface for the corner-free toolkit. Subcommands map onto
// the library modules; results go to stdout (or --out) as JSON/CSV, and
// extremal/census results are cached per dimension.
//
// Exit codes: 0 ok, 2 usage/argument error, 3 cache error, 4 size error,
// 5 budget exhausted, 6 verification failure, 7 table miss, 1 internal.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cornerkit/cache.hpp"
#include "cornerkit/constructions.hpp"
#include "cornerkit/containers.hpp"
#include "cornerkit/io.hpp"
#include "cornerkit/supersat.hpp"

namespace ck = cornerkit;
using nlohmann::json;

namespace {

struct GlobalOpts {
  std::string cache_dir;
  std::string out_path;
};

void emit(const GlobalOpts& g, const std::string& text) {
  if (g.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.out_path);
  if (!out) throw ck::ArgumentError("cannot write " + g.out_path);
  out << text;
}

void emit_json(const GlobalOpts& g, const json& j) { emit(g, j.dump(2) + "\n"); }

ck::ResultCache open_cache(const GlobalOpts& g) {
  return ck::ResultCache(g.cache_dir.empty() ? ck::ResultCache::default_dir()
                                             : std::filesystem::path(g.cache_dir));
}

std::string csv_escape(const std::string& s) { return s; }

struct CsvWriter {
  std::ostringstream out;
  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i)
      out << (i ? "," : "") << csv_escape(fields[i]);
    out << "\n";
  }
};

std::string fmt_double(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

void run_corners(const GlobalOpts& g, int n, int k, const std::string& set_path,
                 bool list) {
  if (!set_path.empty()) {
    const ck::GridSet a = ck::load_grid_set(set_path);
    const auto witness = ck::first_corner_in(a);
    json j{{"schema", 1},
           {"kind", "cornerkit.set-analysis"},
           {"n", a.params.n},
           {"k", a.params.k},
           {"size", a.size()},
           {"corner_count", ck::count_corners(a)},
           {"corner_free", !witness.has_value()}};
    if (witness) j["witness"] = ck::corner_to_json(*witness);
    emit_json(g, j);
    return;
  }
  const ck::GridParams params(n, k);
  json j{{"schema", 1},
         {"kind", "cornerkit.corners"},
         {"n", n},
         {"k", k},
         {"closed_form", ck::corner_count_closed_form(params)},
         {"enumerated", ck::enumerated_corner_count(params)}};
  if (list) {
    json corners = json::array();
    for (const ck::Corner& c : ck::enumerate_corners(params, 100'000))
      corners.push_back(ck::corner_to_json(c));
    j["corners"] = corners;
  }
  emit_json(g, j);
}

void run_extremal(const GlobalOpts& g, int n, int k, std::uint64_t budget,
                  bool no_cache) {
  const ck::GridParams params(n, k);
  ck::ExtremalRecord rec = ck::exact_c(params, ck::SearchLimits{budget});
  if (!no_cache) rec = open_cache(g).upsert_extremal(rec);
  emit_json(g, ck::extremal_record_to_json(rec));
}

void run_census(const GlobalOpts& g, int n, int k, bool oracle, bool csv,
                std::uint64_t budget, bool no_cache) {
  const ck::GridParams params(n, k);
  ck::CensusRecord rec =
      oracle ? ck::count_corner_free_oracle(params)
             : ck::count_corner_free(params, ck::CensusLimits{budget, 62});
  std::optional<long long> ckn;
  if (!no_cache) {
    ck::ResultCache cache = open_cache(g);
    ck::ExtremalTable table;
    cache.fill_table(k, table);
    ckn = table.exact(k, n);
    rec = cache.upsert_census(ck::make_census_record(k, n, rec.count, rec.method,
                                                     rec.exact, ckn));
  }
  if (csv) {
    CsvWriter w;
    w.row({"k", "n", "count", "log2_count", "c_k", "ratio", "method"});
    w.row({std::to_string(rec.k), std::to_string(rec.n), rec.count.str(),
           fmt_double(rec.log2_count), rec.ck ? std::to_string(*rec.ck) : "",
           rec.ratio ? fmt_double(*rec.ratio) : "", rec.method});
    emit(g, w.out.str());
  } else {
    emit_json(g, ck::census_record_to_json(rec));
  }
}

void run_construct_behrend(const GlobalOpts& g, int n, bool as_json) {
  const ck::APFreeSet s = ck::behrend_set(n);
  if (as_json) {
    emit_json(g, json{{"schema", 1},
                      {"kind", "cornerkit.ap-free-set"},
                      {"n", s.n},
                      {"size", s.elems.size()},
                      {"elems", s.elems}});
    return;
  }
  std::ostringstream out;
  out << "# 3-AP-free subset of [1, " << s.n << "], size " << s.elems.size() << "\n";
  for (int e : s.elems) out << e << "\n";
  emit(g, out.str());
}

void run_construct_diagonal(const GlobalOpts& g, int n, const std::string& ap_csv,
                            bool as_json) {
  ck::APFreeSet a{};
  if (ap_csv.empty()) {
    a = ck::behrend_set(n);
  } else {
    std::vector<int> elems;
    std::istringstream in(ap_csv);
    std::string tok;
    while (std::getline(in, tok, ',')) elems.push_back(std::stoi(tok));
    a = ck::make_ap_free_set(n, std::move(elems));
  }
  std::vector<int> dropped;
  const ck::GridSet b = ck::diagonal_corner_free_2d(n, a, &dropped);
  for (int v : dropped)
    std::cerr << "warning: value " << v << " has no in-grid line and was dropped\n";
  emit(g, as_json ? ck::grid_set_to_json(b).dump(2) + "\n" : ck::grid_set_to_text(b));
}

void run_construct_heuristic(const GlobalOpts& g, int n, int k, std::uint64_t budget,
                             std::uint64_t seed, bool as_json) {
  const ck::GridSet s = ck::heuristic_corner_free(ck::GridParams(n, k), budget, seed);
  emit(g, as_json ? ck::grid_set_to_json(s).dump(2) + "\n" : ck::grid_set_to_text(s));
}

void run_supersat_audit(const GlobalOpts& g, const std::string& set_path, int M,
                        double x, double K, std::uint64_t budget) {
  const ck::GridSet a = ck::load_grid_set(set_path);
  ck::ResultCache cache = open_cache(g);
  ck::ExtremalTable table;
  cache.fill_table(a.params.k, table);
  if (!table.exact(a.params.k, M)) {
    ck::ExtremalRecord rec = ck::exact_c(ck::GridParams(M, a.params.k),
                                         ck::SearchLimits{budget});
    rec = cache.upsert_extremal(rec);
    table.merge(rec);
  }
  emit_json(g, ck::audit_report_to_json(
                   ck::audit_grid_family(a, ck::SupersatConfig{M, x, K}, table)));
}

void run_supersat_greedy(const GlobalOpts& g, const std::string& set_path,
                         long long ckn, std::uint64_t budget) {
  const ck::GridSet a = ck::load_grid_set(set_path);
  if (ckn < 0) {
    ck::ResultCache cache = open_cache(g);
    ck::ExtremalTable table;
    cache.fill_table(a.params.k, table);
    if (auto v = table.exact(a.params.k, a.params.n)) {
      ckn = *v;
    } else {
      ck::ExtremalRecord rec = ck::exact_c(a.params, ck::SearchLimits{budget});
      if (rec.status != ck::SolveStatus::exact)
        throw ck::BudgetExhaustedError("could not establish c_k(n) within budget");
      rec = cache.upsert_extremal(rec);
      ckn = rec.lower;
    }
  }
  const auto witnesses = ck::greedy_corner_witnesses(a, ckn);
  json list = json::array();
  for (const ck::Corner& c : witnesses) list.push_back(ck::corner_to_json(c));
  emit_json(g, json{{"schema", 1},
                    {"kind", "cornerkit.greedy-witnesses"},
                    {"n", a.params.n},
                    {"k", a.params.k},
                    {"set_size", a.size()},
                    {"ck", ckn},
                    {"required", std::max<long long>(
                                     0, static_cast<long long>(a.size()) - ckn)},
                    {"count", witnesses.size()},
                    {"witnesses", list}});
}

void run_supersat_primes(const GlobalOpts& g, double x) {
  const auto primes = ck::primes_up_to(x);
  json j = ck::pnt_report_to_json(ck::pnt_bounds_check(x));
  j["schema"] = 1;
  j["kind"] = "cornerkit.primes";
  j["primes"] = primes;
  emit_json(g, j);
}

void run_supersat_target(const GlobalOpts& g, const std::string& set_path,
                         std::uint64_t budget) {
  const ck::GridSet a = ck::load_grid_set(set_path);
  ck::ResultCache cache = open_cache(g);
  ck::ExtremalTable table;
  cache.fill_table(a.params.k, table);
  if (!table.exact(a.params.k, a.params.n)) {
    ck::ExtremalRecord rec = ck::exact_c(a.params, ck::SearchLimits{budget});
    if (rec.status != ck::SolveStatus::exact)
      throw ck::BudgetExhaustedError("could not establish c_k(n) within budget");
    rec = cache.upsert_extremal(rec);
    table.merge(rec);
  }
  const ck::RateFunctions rf = ck::RateFunctions::make(a.params.k, table);
  json j = ck::target_report_to_json(ck::supersaturation_target(a, rf));
  j["schema"] = 1;
  j["kind"] = "cornerkit.supersat-target";
  emit_json(g, j);
}

void run_containers(const GlobalOpts& g, int n, int k, const std::string& hg_path,
                    double epsilon, double tau, bool verify) {
  const ck::Hypergraph h = hg_path.empty()
                               ? ck::corner_hypergraph(ck::GridParams(n, k))
                               : ck::load_hypergraph(hg_path);
  const ck::ContainerSet cs = ck::build_containers(h, epsilon);
  json j = ck::container_set_to_json(cs);
  if (tau > 0 && h.edge_count() >= 1) {
    j["hypotheses"] = ck::hypothesis_report_to_json(ck::check_hypotheses(h, epsilon, tau));
    j["codegree"] = ck::codegree(h, tau).value;
  }
  if (verify) {
    j["verify"] = ck::verify_report_to_json(ck::verify_containers(
        h, cs, epsilon, tau > 0 ? std::optional<double>(tau) : std::nullopt));
  }
  emit_json(g, j);
}

void run_pipeline(const GlobalOpts& g, int n, int k, double log_base,
                  std::uint64_t budget, bool no_cache) {
  ck::ExtremalTable table;
  if (!no_cache) open_cache(g).fill_table(k, table);
  const ck::GridParams params(n, k);
  const ck::PipelineReport rep = ck::container_counting_pipeline(
      params, table, log_base, ck::SearchLimits{budget});
  if (!no_cache) {
    ck::ResultCache cache = open_cache(g);
    if (const ck::ExtremalRecord* r = table.find(k, n)) cache.upsert_extremal(*r);
  }
  emit_json(g, ck::pipeline_report_to_json(rep));
}

void run_table(const GlobalOpts& g, int k, int n_max, std::uint64_t budget,
               bool compute) {
  ck::ResultCache cache = open_cache(g);
  ck::ExtremalTable table;
  cache.fill_table(k, table);
  ck::CacheData data = cache.load(k);

  CsvWriter w;
  w.row({"n", "ck_status", "ck_lower", "ck_upper", "f", "census", "log2_census",
         "ratio", "subadditive_upper"});
  for (int n = 1; n <= n_max; ++n) {
    const ck::GridParams params(n, k);
    if (compute && !table.exact(k, n) && params.cells <= 36) {
      ck::ExtremalRecord rec = ck::exact_c(params, ck::SearchLimits{budget});
      rec = cache.upsert_extremal(rec);
      table.merge(rec);
    }
    const ck::ExtremalRecord* rec = table.find(k, n);
    const ck::CensusRecord* cen = nullptr;
    for (const auto& c : data.census)
      if (c.n == n) cen = &c;
    ck::CensusRecord computed;
    if (compute && !cen && params.cells <= 25) {
      computed = ck::count_corner_free_oracle(params);
      computed = cache.upsert_census(ck::make_census_record(
          k, n, computed.count, computed.method, computed.exact, table.exact(k, n)));
      cen = &computed;
    }
    std::string f, ratio;
    if (rec && rec->status == ck::SolveStatus::exact) {
      f = fmt_double(static_cast<double>(rec->lower) /
                     std::pow(static_cast<double>(n), k));
      if (cen && rec->lower > 0)
        ratio = fmt_double(cen->log2_count / static_cast<double>(rec->lower));
    }
    std::string subadd;
    if (n >= 2) {
      const long long upper = table.best_upper(k, n);
      if (upper < static_cast<long long>(params.cells)) subadd = std::to_string(upper);
    }
    w.row({std::to_string(n),
           rec ? (rec->status == ck::SolveStatus::exact ? "exact" : "bounded") : "",
           rec ? std::to_string(rec->lower) : "",
           rec ? std::to_string(rec->upper) : "", f,
           cen ? cen->count.str() : "", cen ? fmt_double(cen->log2_count) : "",
           ratio, subadd});
  }
  emit(g, w.out.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corner-free set toolkit"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--cache-dir", g.cache_dir, "result cache directory");
  app.add_option("--out", g.out_path, "write output to a file instead of stdout");

  int n = 2, k = 2, M = 2, n_max = 5;
  double x = 2.0, K = 2.0, epsilon = 0.5, tau = 0.0, log_base = std::exp(1.0);
  std::uint64_t budget = 50'000'000, seed = 0;
  long long ckn = -1;
  std::string set_path, hg_path, ap_csv;
  bool list = false, oracle = false, csv = false, as_json = false;
  bool no_cache = false, verify = false, compute = false;

  auto* corners = app.add_subcommand("corners", "enumerate or count corners");
  corners->add_option("--n", n, "grid side");
  corners->add_option("--k", k, "grid dimension");
  corners->add_option("--set", set_path, "analyze a grid set file");
  corners->add_flag("--list", list, "list the corner stream (small grids)");

  auto* extremal = app.add_subcommand("extremal", "compute c_k(n)");
  extremal->add_option("--n", n, "grid side")->required();
  extremal->add_option("--k", k, "grid dimension")->required();
  extremal->add_option("--budget", budget, "node budget");
  extremal->add_flag("--no-cache", no_cache, "do not touch the cache");

  auto* census = app.add_subcommand("census", "count corner-free subsets");
  census->add_option("--n", n, "grid side")->required();
  census->add_option("--k", k, "grid dimension")->required();
  census->add_flag("--oracle", oracle, "use the exhaustive subset scan (n^k <= 25)");
  census->add_flag("--csv", csv, "emit CSV instead of JSON");
  census->add_option("--budget", budget, "node budget for the pruned counter");
  census->add_flag("--no-cache", no_cache, "do not touch the cache");

  auto* construct = app.add_subcommand("construct", "lower-bound constructions");
  construct->require_subcommand(1);
  auto* behrend = construct->add_subcommand("behrend", "3-AP-free subset of [1, n]");
  behrend->add_option("--n", n, "range bound")->required();
  behrend->add_flag("--json", as_json, "emit JSON");
  auto* diagonal = construct->add_subcommand("diagonal", "corner-free set from lines y=x+a");
  diagonal->add_option("--n", n, "grid side")->required();
  diagonal->add_option("--ap", ap_csv, "comma-separated 3-AP-free values (default: construct one)");
  diagonal->add_flag("--json", as_json, "emit JSON");
  auto* heuristic = construct->add_subcommand("heuristic", "randomized corner-free search");
  heuristic->add_option("--n", n, "grid side")->required();
  heuristic->add_option("--k", k, "grid dimension")->required();
  heuristic->add_option("--budget", budget, "number of local-search steps")->required();
  heuristic->add_option("--seed", seed, "random seed (default 0, never entropy)");
  heuristic->add_flag("--json", as_json, "emit JSON");

  auto* supersat = app.add_subcommand("supersat", "supersaturation machinery");
  supersat->require_subcommand(1);
  auto* audit = supersat->add_subcommand("audit", "audit the prime-spaced decomposition");
  audit->add_option("--set", set_path, "grid set file")->required();
  audit->add_option("--M", M, "subgrid side")->required();
  audit->add_option("--x", x, "prime cutoff")->required();
  audit->add_option("--K", K, "density constant");
  audit->add_option("--budget", budget, "node budget for c_k(M)");
  auto* greedy = supersat->add_subcommand("greedy", "greedy corner witnesses");
  greedy->add_option("--set", set_path, "grid set file")->required();
  greedy->add_option("--ck", ckn, "c_k(n) value (default: cache or solve)");
  greedy->add_option("--budget", budget, "node budget");
  auto* primes = supersat->add_subcommand("primes", "prime sieve and counting bounds");
  primes->add_option("--x", x, "cutoff")->required();
  auto* target = supersat->add_subcommand("target", "supersaturation target margins");
  target->add_option("--set", set_path, "grid set file")->required();
  target->add_option("--budget", budget, "node budget");

  auto* containers = app.add_subcommand("containers", "container families");
  containers->add_option("--n", n, "grid side");
  containers->add_option("--k", k, "grid dimension");
  containers->add_option("--hypergraph", hg_path, "hypergraph text file instead of a grid");
  containers->add_option("--epsilon", epsilon, "edge-density budget")->required();
  containers->add_option("--tau", tau, "report the codegree and hypotheses at this tau");
  containers->add_flag("--verify", verify, "verify covering and sparsity");

  auto* pipeline = app.add_subcommand("pipeline", "end-to-end count bound");
  pipeline->add_option("--n", n, "grid side")->required();
  pipeline->add_option("--k", k, "grid dimension")->required();
  pipeline->add_option("--log-base", log_base, "log base for the rate functions");
  pipeline->add_option("--budget", budget, "node budget");
  pipeline->add_flag("--no-cache", no_cache, "do not touch the cache");

  auto* table = app.add_subcommand("table", "CSV summary per n");
  table->add_option("--k", k, "grid dimension")->required();
  table->add_option("--n-max", n_max, "largest side to report")->required();
  table->add_option("--budget", budget, "node budget when computing");
  table->add_flag("--compute", compute, "fill gaps within reach instead of printing them");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*corners) run_corners(g, n, k, set_path, list);
    if (*extremal) run_extremal(g, n, k, budget, no_cache);
    if (*census) run_census(g, n, k, oracle, csv, budget, no_cache);
    if (*behrend) run_construct_behrend(g, n, as_json);
    if (*diagonal) run_construct_diagonal(g, n, ap_csv, as_json);
    if (*heuristic) run_construct_heuristic(g, n, k, budget, seed, as_json);
    if (*audit) run_supersat_audit(g, set_path, M, x, K, budget);
    if (*greedy) run_supersat_greedy(g, set_path, ckn, budget);
    if (*primes) run_supersat_primes(g, x);
    if (*target) run_supersat_target(g, set_path, budget);
    if (*containers) run_containers(g, n, k, hg_path, epsilon, tau, verify);
    if (*pipeline) run_pipeline(g, n, k, log_base, budget, no_cache);
    if (*table) run_table(g, k, n_max, budget, compute);
  } catch (const ck::ArgumentError& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return 2;
  } catch (const ck::CacheError& e) {
    std::cerr << "cache error: " << e.what() << "\n";
    return 3;
  } catch (const ck::SizeError& e) {
    std::cerr << "size error: " << e.what() << "\n";
    return 4;
  } catch (const ck::BudgetExhaustedError& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 5;
  } catch (const ck::VerificationError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 6;
  } catch (const ck::TableMissError& e) {
    std::cerr << "table miss: " << e.what() << "\n";
    return 7;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

#include "cornerkit/io.hpp"

#include <fstream>
#include <sstream>

namespace cornerkit {

using nlohmann::json;

std::string grid_set_to_text(const GridSet& a) {
  std::ostringstream out;
  out << "grid n=" << a.params.n << " k=" << a.params.k << "\n";
  a.bits.for_each_set([&](std::size_t idx) {
    const auto coords = a.params.coords_of(idx);
    for (std::size_t i = 0; i < coords.size(); ++i)
      out << (i ? " " : "") << coords[i];
    out << "\n";
  });
  return out.str();
}

namespace {

std::string strip(const std::string& line) {
  std::string s = line.substr(0, line.find('#'));
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

GridSet grid_set_from_text(std::istream& in) {
  std::string line;
  std::string header;
  while (std::getline(in, line)) {
    header = strip(line);
    if (!header.empty()) break;
  }
  int n = 0, k = 0;
  if (std::sscanf(header.c_str(), "grid n=%d k=%d", &n, &k) != 2)
    throw FormatError("expected header 'grid n=<n> k=<k>'");
  GridSet a = GridSet(GridParams(n, k));
  std::vector<int> coords;
  while (std::getline(in, line)) {
    const std::string s = strip(line);
    if (s.empty()) continue;
    coords.clear();
    std::istringstream ls(s);
    int v;
    while (ls >> v) coords.push_back(v);
    if (!ls.eof()) throw FormatError("malformed point line: " + s);
    a.add_point(coords);
  }
  return a;
}

GridSet grid_set_from_text(const std::string& text) {
  std::istringstream in(text);
  return grid_set_from_text(in);
}

json grid_set_to_json(const GridSet& a) {
  json cells = json::array();
  a.bits.for_each_set([&](std::size_t idx) { cells.push_back(a.params.coords_of(idx)); });
  return json{{"n", a.params.n}, {"k", a.params.k}, {"cells", cells}};
}

GridSet grid_set_from_json(const json& j) {
  if (!j.contains("n") || !j.contains("k") || !j.contains("cells"))
    throw FormatError("grid set JSON needs n, k and cells");
  GridSet a = GridSet(GridParams(j.at("n").get<int>(), j.at("k").get<int>()));
  for (const auto& cell : j.at("cells"))
    a.add_point(cell.get<std::vector<int>>());
  return a;
}

GridSet load_grid_set(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{')
    return grid_set_from_json(json::parse(text));
  return grid_set_from_text(text);
}

std::string hypergraph_to_text(const Hypergraph& h) {
  std::ostringstream out;
  out << h.r << " " << h.vertex_count << " " << h.edges.size() << "\n";
  for (const auto& e : h.edges) {
    for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
    out << "\n";
  }
  return out.str();
}

Hypergraph hypergraph_from_text(std::istream& in) {
  std::string line;
  std::string header;
  while (std::getline(in, line)) {
    header = strip(line);
    if (!header.empty()) break;
  }
  int r = 0;
  long long v = 0, e = 0;
  if (std::sscanf(header.c_str(), "%d %lld %lld", &r, &v, &e) != 3 || v < 0 || e < 0)
    throw FormatError("expected hypergraph header 'r |V| |E|'");
  std::vector<std::vector<std::uint32_t>> edges;
  while (std::getline(in, line)) {
    const std::string s = strip(line);
    if (s.empty()) continue;
    std::istringstream ls(s);
    std::vector<std::uint32_t> edge;
    long long id;
    while (ls >> id) {
      if (id < 0 || id >= v) throw FormatError("edge vertex out of range: " + s);
      edge.push_back(static_cast<std::uint32_t>(id));
    }
    edges.push_back(std::move(edge));
  }
  if (static_cast<long long>(edges.size()) != e)
    throw FormatError("edge count does not match header");
  return Hypergraph::make(r, static_cast<std::uint32_t>(v), std::move(edges));
}

Hypergraph hypergraph_from_text(const std::string& text) {
  std::istringstream in(text);
  return hypergraph_from_text(in);
}

Hypergraph load_hypergraph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path.string());
  return hypergraph_from_text(in);
}

json corner_to_json(const Corner& c) {
  return json{{"apex", c.apex.coords}, {"d", c.d}};
}

json extremal_record_to_json(const ExtremalRecord& r) {
  json j{{"k", r.k},
         {"n", r.n},
         {"status", r.status == SolveStatus::exact ? "exact" : "bounded"},
         {"lower", r.lower},
         {"upper", r.upper},
         {"method", r.method}};
  if (r.witness) j["witness"] = grid_set_to_json(*r.witness);
  return j;
}

ExtremalRecord extremal_record_from_json(const json& j) {
  ExtremalRecord r;
  r.k = j.at("k").get<int>();
  r.n = j.at("n").get<int>();
  const std::string status = j.at("status").get<std::string>();
  if (status != "exact" && status != "bounded")
    throw FormatError("unknown extremal record status: " + status);
  r.status = status == "exact" ? SolveStatus::exact : SolveStatus::bounded;
  r.lower = j.at("lower").get<long long>();
  r.upper = j.at("upper").get<long long>();
  r.method = j.value("method", "");
  if (j.contains("witness")) r.witness = grid_set_from_json(j.at("witness"));
  return r;
}

json census_record_to_json(const CensusRecord& r) {
  json j{{"k", r.k},
         {"n", r.n},
         {"count", r.count.str()},
         {"log2_count", r.log2_count},
         {"method", r.method},
         {"exact", r.exact}};
  if (r.ck) j["c_k"] = *r.ck;
  if (r.ratio) j["ratio"] = *r.ratio;
  return j;
}

CensusRecord census_record_from_json(const json& j) {
  CensusRecord r;
  r.k = j.at("k").get<int>();
  r.n = j.at("n").get<int>();
  r.count = BigInt(j.at("count").get<std::string>());
  r.method = j.value("method", "");
  r.exact = j.value("exact", true);
  r.log2_count = r.count > 0 ? log2_big(r.count) : 0.0;
  if (j.contains("c_k")) {
    r.ck = j.at("c_k").get<long long>();
    if (*r.ck > 0) r.ratio = r.log2_count / static_cast<double>(*r.ck);
  }
  return r;
}

json audit_report_to_json(const AuditReport& rep) {
  json entries = json::array();
  for (const AuditEntry& e : rep.entries) {
    entries.push_back(json{{"id", e.id},
                           {"label", e.label},
                           {"lhs", e.lhs},
                           {"rhs", e.rhs},
                           {"relation", e.relation},
                           {"preconditions_met", e.preconditions_met},
                           {"structural", e.structural},
                           {"holds", e.holds},
                           {"note", e.note}});
  }
  return json{{"schema", 1},
              {"kind", "cornerkit.audit"},
              {"n", rep.params.n},
              {"k", rep.params.k},
              {"config", json{{"M", rep.cfg.M}, {"x", rep.cfg.x}, {"K", rep.cfg.K}}},
              {"ck_M", rep.ck_M},
              {"set_size", rep.set_size},
              {"gamma", rep.gamma},
              {"family_size", rep.family_size},
              {"dense_count", rep.dense_count},
              {"x_canonical", rep.x_canonical},
              {"density_ok", rep.density_ok},
              {"structural_ok", rep.structural_ok},
              {"entries", entries}};
}

json container_set_to_json(const ContainerSet& cs) {
  std::size_t max_size = 0;
  for (const auto& c : cs.containers) max_size = std::max(max_size, c.size());
  return json{{"schema", 1},
              {"kind", "cornerkit.containers"},
              {"epsilon", cs.epsilon},
              {"vertex_count", cs.vertex_count},
              {"count", cs.containers.size()},
              {"max_size", max_size},
              {"containers", cs.containers}};
}

json verify_report_to_json(const VerifyReport& r) {
  json j{{"covering_checked_exhaustively", r.covering_checked_exhaustively},
         {"independent_sets_checked", r.independent_sets_checked},
         {"covering_ok", r.covering_ok},
         {"sparsity_ok", r.sparsity_ok},
         {"max_edges_in_container", r.max_edges_in_container},
         {"edge_budget", r.edge_budget},
         {"max_container_size", r.max_container_size},
         {"log2_containers", r.log2_containers}};
  if (r.uncovered) j["uncovered_independent_set"] = *r.uncovered;
  if (r.theorem_budget) {
    j["theorem_budget"] = *r.theorem_budget;
    j["budget_within"] = r.budget_within;
  }
  return j;
}

json hypothesis_report_to_json(const HypothesisReport& r) {
  return json{{"r", r.r},
              {"tau", r.tau},
              {"epsilon", r.epsilon},
              {"tau_limit", r.tau_limit},
              {"tau_ok", r.tau_ok},
              {"codegree_value", r.codegree_value},
              {"codegree_limit", r.codegree_limit},
              {"codegree_ok", r.codegree_ok},
              {"c_r_bound", r.c_r_bound},
              {"all_ok", r.all_ok}};
}

json pipeline_report_to_json(const PipelineReport& r) {
  json j{{"schema", 1},
         {"kind", "cornerkit.pipeline"},
         {"k", r.k},
         {"n", r.n},
         {"c_k", r.ck},
         {"census", r.census.str()},
         {"census_method", r.census_method},
         {"epsilon", r.epsilon},
         {"tau", r.tau},
         {"epsilon_clamped", r.epsilon_clamped},
         {"container_count", r.container_count},
         {"max_container_size", r.max_container_size},
         {"log2_containers", r.log2_containers},
         {"sum_two_pow_size", r.sum_two_pow_size.str()},
         {"census_within_sum", r.census_within_sum},
         {"c_prime", r.c_prime},
         {"max_size_within_cprime", r.max_size_within_cprime},
         {"verify", verify_report_to_json(r.verify)}};
  if (r.hypotheses) j["hypotheses"] = hypothesis_report_to_json(*r.hypotheses);
  if (r.log_budget) j["log_budget"] = *r.log_budget;
  return j;
}

json pnt_report_to_json(const PntReport& r) {
  return json{{"x", r.x},
              {"pi", r.pi},
              {"lower", r.lower},
              {"upper", r.upper},
              {"lower_holds", r.lower_holds},
              {"upper_holds", r.upper_holds},
              {"in_known_lower_window", r.in_known_lower_window}};
}

json rate_values_to_json(const RateValues& v) {
  return json{{"f", v.f},
              {"lambda", v.lambda},
              {"upsilon", v.upsilon},
              {"psi", v.psi},
              {"log_n", v.log_n}};
}

json double_counting_report_to_json(const DoubleCountingReport& r) {
  json j{{"k", r.k},
         {"ck", r.ck},
         {"set_size", r.set_size},
         {"preconditions_met", r.preconditions_met},
         {"gamma", r.gamma},
         {"bound", r.bound},
         {"holds", r.holds},
         {"binom_form_ok", r.binom_form_ok},
         {"identity_s", r.identity_s},
         {"identity_closed", r.identity_closed.str()},
         {"identity_checked", r.identity_checked}};
  if (r.identity_checked) {
    j["identity_exhaustive"] = r.identity_exhaustive.str();
    j["identity_ok"] = r.identity_ok;
  }
  return j;
}

json target_report_to_json(const TargetReport& r) {
  return json{{"k", r.k},
              {"n", r.n},
              {"ck", r.ck},
              {"set_size", r.set_size},
              {"c_prime", r.c_prime},
              {"size_threshold", r.size_threshold},
              {"threshold_met", r.threshold_met},
              {"gamma", r.gamma},
              {"upsilon", r.upsilon},
              {"target", r.target},
              {"identity_ratio", r.identity_ratio},
              {"identity_ok", r.identity_ok},
              {"asymptotic_only", true}};
}

json subadditivity_report_to_json(const SubadditivityReport& r) {
  json pairs = json::array();
  for (const auto& p : r.pairs) {
    pairs.push_back(json{{"m", p.m},
                         {"n", p.n},
                         {"f_m", p.f_m},
                         {"f_n", p.f_n},
                         {"ratio_ok", p.ratio_ok},
                         {"subadd_rhs", p.subadd_rhs},
                         {"subadd_ok", p.subadd_ok}});
  }
  return json{{"k", r.k}, {"all_ok", r.all_ok}, {"pairs", pairs}};
}

}  // namespace cornerkit

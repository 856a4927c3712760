// cliffdeg: irreducible-representation dimensions of classical groups over
// length-two local rings.
//
// Exit codes: 0 all checks pass, 2 a check failed, 3 budget refusal, 4 invalid config.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "cliffdeg/engine.hpp"
#include "cliffdeg/errors.hpp"
#include "cliffdeg/oracle.hpp"

using namespace cliffdeg;
using nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;

struct RunConfig {
  std::string command;
  std::string family = "sl";
  int n = 2;
  int p = 3;
  int m = 1;
  std::string ring = "unramified";
  std::string format = "json";
  std::string out;
  int threads = 1;
  std::uint64_t seed = 1;
  bool with_oracle = false;
  int level = 2;
  std::string group;  // oracle on a named group: cyclic:k or symmetric:k
  Budgets budgets = Budgets::from_env();

  EngineConfig engine() const {
    EngineConfig c;
    c.budgets = budgets;
    c.threads = threads;
    c.seed = seed;
    return c;
  }
  GroupSpec spec() const {
    RingSpec r;
    r.kind = parse_ring_kind(ring);
    r.p = p;
    r.m = m;
    return make_group_spec(parse_family(family), n, r);
  }
};

struct Report {
  ordered_json json;
  std::vector<std::vector<std::string>> table;  // first row is the header
  bool ok = true;
};

ordered_json mat_json(const Mat& a) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < a.n; ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < a.n; ++j) row.push_back(a(i, j));
    rows.push_back(row);
  }
  return rows;
}

std::string mat_tsv(const Mat& a) {
  std::string s;
  for (int i = 0; i < a.n; ++i) {
    if (i) s += ";";
    for (int j = 0; j < a.n; ++j) s += (j ? "," : "") + std::to_string(a(i, j));
  }
  return s;
}

std::string degrees_tsv(const std::vector<std::uint64_t>& d) {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s;
}

ordered_json checks_json(const std::map<std::string, Check>& checks, bool& ok) {
  ordered_json out = ordered_json::object();
  for (const auto& [name, c] : checks) {
    out[name] = {{"ok", c.ok}, {"detail", c.detail}};
    ok = ok && c.ok;
  }
  return out;
}

ordered_json header(const RunConfig& cfg) {
  ordered_json h;
  h["schema_version"] = kSchemaVersion;
  h["command"] = cfg.command;
  h["config"] = {{"family", cfg.family}, {"n", cfg.n},           {"p", cfg.p},
                 {"m", cfg.m},           {"ring", cfg.ring},     {"threads", cfg.threads},
                 {"seed", cfg.seed}};
  h["budgets"] = {{"enumeration", cfg.budgets.enumeration},
                  {"orbit_action", cfg.budgets.orbit_action},
                  {"oracle", cfg.budgets.oracle},
                  {"oracle_classes", cfg.budgets.oracle_classes}};
  return h;
}

ordered_json orbits_json(const std::vector<OrbitRecord>& orbits, std::size_t residue_order) {
  ordered_json arr = ordered_json::array();
  for (const auto& o : orbits) {
    ordered_json j = {{"rep", mat_json(o.rep)},
                      {"size", o.size},
                      {"stab_order", o.stab_order()},
                      {"index", residue_order / o.stab_order()}};
    if (!o.degrees.empty()) j["degrees"] = o.degrees;
    arr.push_back(j);
  }
  return arr;
}

ordered_json irr_json(const std::map<std::uint64_t, std::uint64_t>& irr) {
  ordered_json arr = ordered_json::array();
  for (const auto& [d, k] : irr) arr.push_back({{"dim", d}, {"count", k}});
  return arr;
}

void fill_group(ordered_json& j, const GroupSpec& spec, const Classical& c) {
  j["group"] = spec.describe();
  j["residue_order"] = c.residue_order();
  j["lie_dim"] = c.lie.dim();
  j["group_order"] = c.group_order();
}

Report cmd_irr(const RunConfig& cfg) {
  Report r;
  GroupSpec spec = cfg.spec();
  Classical c = make_classical(spec, cfg.engine());
  IrrResult res = irr_dimensions(c, cfg.engine());
  if (cfg.with_oracle) {
    OracleComparison cmp = compare_with_oracle(c, res, cfg.engine());
    res.checks["class_count"] = cmp.class_count;
    res.checks["oracle_degrees"] = cmp.degrees;
  }
  r.json = header(cfg);
  fill_group(r.json, spec, c);
  r.json["orbits"] = orbits_json(res.orbits, res.residue_order);
  r.json["irr"] = irr_json(res.irr);
  r.json["descriptor_count"] = res.descriptor_count();
  r.json["checks"] = checks_json(res.checks, r.ok);
  r.table.push_back({"dim", "count"});
  for (const auto& [d, k] : res.irr) r.table.push_back({std::to_string(d), std::to_string(k)});
  return r;
}

Report cmd_orbits(const RunConfig& cfg) {
  Report r;
  GroupSpec spec = cfg.spec();
  Classical c = make_classical(spec, cfg.engine());
  auto orbits = adjoint_orbits(c, cfg.engine());
  std::size_t total = 0;
  for (const auto& o : orbits) total += o.size;
  r.json = header(cfg);
  fill_group(r.json, spec, c);
  r.json["parameters"] = c.scalar_mode ? "scalar classes" : "M_C";
  r.json["orbits"] = orbits_json(orbits, c.residue_order());
  std::map<std::string, Check> checks;
  checks["partition"] = {total == c.parameter_count(),
                         std::to_string(total) + " of " + std::to_string(c.parameter_count())};
  r.json["checks"] = checks_json(checks, r.ok);
  r.table.push_back({"rep", "size", "stab_order"});
  for (const auto& o : orbits) r.table.push_back({mat_tsv(o.rep), std::to_string(o.size), std::to_string(o.stab_order())});
  return r;
}

Report cmd_compare(const RunConfig& cfg) {
  Report r;
  CompareResult res = compare_rings(parse_family(cfg.family), cfg.n, cfg.p, cfg.m, cfg.engine());
  r.json = header(cfg);
  r.json["config"].erase("ring");
  r.json["equal"] = res.equal;
  r.json["aligned"] = res.aligned;
  r.json["ties"] = res.ties;
  r.json["diff"] = res.diff;
  r.json["unramified"] = {{"group_order", res.unramified.group_order},
                          {"irr", irr_json(res.unramified.irr)},
                          {"checks", checks_json(res.unramified.checks, r.ok)}};
  r.json["ramified"] = {{"group_order", res.ramified.group_order},
                        {"irr", irr_json(res.ramified.irr)},
                        {"checks", checks_json(res.ramified.checks, r.ok)}};
  ordered_json align = ordered_json::array();
  for (auto [a, b] : res.alignment)
    align.push_back({{"unramified", mat_json(res.unramified.orbits[a].rep)},
                     {"ramified", mat_json(res.ramified.orbits[b].rep)},
                     {"size", res.unramified.orbits[a].size},
                     {"stab_order", res.unramified.orbits[a].stab_order()}});
  r.json["alignment"] = align;
  r.ok = r.ok && res.equal && res.aligned;
  r.table.push_back({"dim", "unramified", "ramified"});
  std::set<std::uint64_t> dims;
  for (const auto& [d, k] : res.unramified.irr) dims.insert(d);
  for (const auto& [d, k] : res.ramified.irr) dims.insert(d);
  auto get = [](const auto& m, std::uint64_t d) {
    auto it = m.find(d);
    return std::to_string(it == m.end() ? 0 : it->second);
  };
  for (auto d : dims) r.table.push_back({std::to_string(d), get(res.unramified.irr, d), get(res.ramified.irr, d)});
  return r;
}

Report cmd_radical(const RunConfig& cfg) {
  Report r;
  GroupSpec spec = cfg.spec();
  LieSpace lie = lie_space(spec.family, spec.n, spec.residue());
  LieSpace rad = radical(lie, spec.residue());
  const bool p_divides = spec.family == Family::SL && spec.size % cfg.p == 0;
  // Expected: zero, or the scalar line (F_q I as an F_p-space) for SL with p | n.
  bool ok;
  std::string expect;
  if (p_divides) {
    ok = rad.dim() == cfg.m;
    for (const Mat& b : rad.basis) ok = ok && is_scalar(b);
    expect = "scalar line";
  } else {
    ok = rad.dim() == 0;
    expect = "zero";
  }
  r.json = header(cfg);
  r.json["group"] = spec.describe();
  r.json["lie_dim"] = lie.dim();
  r.json["radical_dim"] = rad.dim();
  ordered_json basis = ordered_json::array();
  for (const Mat& b : rad.basis) basis.push_back(mat_json(b));
  r.json["radical_basis"] = basis;
  std::map<std::string, Check> checks;
  checks["radical"] = {ok, "expected " + expect + ", F_p-dimension " + std::to_string(rad.dim())};
  r.json["checks"] = checks_json(checks, r.ok);
  r.table.push_back({"lie_dim", "radical_dim", "expected"});
  r.table.push_back({std::to_string(lie.dim()), std::to_string(rad.dim()), expect});
  return r;
}

Report cmd_verify_ext(const RunConfig& cfg) {
  Report r;
  GroupSpec spec = cfg.spec();
  Classical c = make_classical(spec, cfg.engine());
  auto orbits = adjoint_orbits(c, cfg.engine());
  auto reports = verify_extensions(c, orbits, cfg.engine());
  r.json = header(cfg);
  fill_group(r.json, spec, c);
  ordered_json arr = ordered_json::array();
  r.table.push_back({"rep", "method", "complement", "ok"});
  for (const auto& e : reports) {
    bool ok = true;
    ordered_json j = {{"rep", mat_json(e.rep)}, {"method", e.method}, {"checks", checks_json(e.checks, ok)}};
    if (e.s.applicable)
      j["complement"] = {{"method", e.s.complement_method},
                         {"order", e.s.complement_order},
                         {"checks", checks_json(e.s.checks, ok)}};
    j["ok"] = ok;
    r.ok = r.ok && ok;
    arr.push_back(j);
    r.table.push_back({mat_tsv(e.rep), e.method, e.s.applicable ? e.s.complement_method : "-", ok ? "ok" : "FAIL"});
  }
  r.json["orbits"] = arr;
  return r;
}

Report cmd_oracle(const RunConfig& cfg) {
  Report r;
  r.json = header(cfg);
  DegreeResult d;
  std::size_t order = 0;
  if (!cfg.group.empty()) {
    auto colon = cfg.group.find(':');
    if (colon == std::string::npos) throw InvalidConfig("--group expects cyclic:k or symmetric:k");
    const std::string kind = cfg.group.substr(0, colon);
    const int k = std::stoi(cfg.group.substr(colon + 1));
    if (k < 1 || (kind == "symmetric" && k > 6) || (kind == "cyclic" && k > 100000))
      throw InvalidConfig("--group size out of range");
    TableGroup g = kind == "cyclic" ? TableGroup::cyclic(k)
                   : kind == "symmetric" ? TableGroup::symmetric(k)
                                         : throw InvalidConfig("unknown group kind " + kind);
    order = g.order();
    d = character_degrees(g, cfg.budgets, cfg.threads);
    r.json["group"] = cfg.group;
  } else {
    GroupSpec spec = cfg.spec();
    MatrixGroup g = cfg.level == 1 ? enumerate_residue_group(spec, cfg.budgets) : enumerate_group(spec, cfg.budgets);
    order = g.order();
    d = character_degrees(g, cfg.budgets, cfg.threads);
    r.json["group"] = cfg.level == 1 ? spec.describe() + " mod pi" : spec.describe();
  }
  std::uint64_t squares = 0;
  std::map<std::uint64_t, std::uint64_t> counts;
  for (auto x : d.degrees) {
    squares += x * x;
    ++counts[x];
  }
  r.json["order"] = order;
  r.json["class_count"] = d.class_count;
  r.json["prime"] = d.prime;
  r.json["irr"] = irr_json(counts);
  std::map<std::string, Check> checks;
  checks["sum_squares"] = {squares == order, std::to_string(squares) + " vs " + std::to_string(order)};
  checks["count"] = {d.degrees.size() == d.class_count, "degrees vs classes"};
  r.json["checks"] = checks_json(checks, r.ok);
  r.table.push_back({"dim", "count"});
  for (const auto& [x, k] : counts) r.table.push_back({std::to_string(x), std::to_string(k)});
  return r;
}

Report cmd_groups(const RunConfig& cfg) {
  Report r;
  r.json = header(cfg);
  ordered_json arr = ordered_json::array();
  r.table.push_back({"family", "n", "size", "residue_order", "lie_dim", "group_order", "scalar_classes"});
  for (Family f : {Family::SL, Family::Sp, Family::O, Family::U})
    for (int n = 1; n <= 3; ++n) {
      RingSpec rs;
      rs.p = cfg.p;
      rs.m = cfg.m;
      rs.kind = parse_ring_kind(cfg.ring);
      GroupSpec spec;
      try {
        spec = make_group_spec(f, n, rs);
      } catch (const InvalidConfig&) {
        continue;
      }
      if (spec.size > 4) continue;
      ordered_json j = {{"family", family_name(f)}, {"n", n}, {"size", spec.size}};
      LieSpace lie = lie_space(f, n, spec.residue());
      j["lie_dim"] = lie.dim();
      j["scalar_classes"] = f == Family::SL && spec.size % cfg.p == 0;
      std::string order = "over budget", group = "over budget";
      try {
        MatrixGroup g = enumerate_residue_group(spec, cfg.budgets);
        order = std::to_string(g.order());
        j["residue_order"] = g.order();
        j["group_order"] = expected_order(g.order(), lie);
        group = std::to_string(expected_order(g.order(), lie));
      } catch (const BudgetExceeded&) {
        j["residue_order"] = nullptr;
      }
      arr.push_back(j);
      r.table.push_back({family_name(f), std::to_string(n), std::to_string(spec.size), order,
                         std::to_string(lie.dim()), group, j["scalar_classes"].get<bool>() ? "yes" : "no"});
    }
  r.json["groups"] = arr;
  return r;
}

std::string render(const Report& r, const std::string& format) {
  if (format == "json") return r.json.dump(2) + "\n";
  std::ostringstream os;
  os << "#schema_version\t" << kSchemaVersion << "\n";
  os << "#command\t" << r.json.value("command", "") << "\n";
  for (const auto& row : r.table) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "\t" : "") << row[i];
    os << "\n";
  }
  os << "#status\t" << (r.ok ? "ok" : "check_failed") << "\n";
  return os.str();
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw InvalidConfig("cannot write " + path);
  f << text;
}

void emit_error(const RunConfig& cfg, const std::string& status, const std::string& message) {
  std::cerr << "cliffdeg: " << message << "\n";
  if (cfg.format != "json") return;
  ordered_json j = header(cfg);
  j["status"] = status;
  j["message"] = message;
  try {
    emit(j.dump(2) + "\n", cfg.out);
  } catch (...) {
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Irreducible-representation dimensions of SL, Sp, O, U over length-two local rings"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub, bool family_opts) {
    if (family_opts) {
      sub->add_option("--family", cfg.family, "sl | sp | o | u")->capture_default_str();
      sub->add_option("--n", cfg.n, "family parameter (Sp_n is 2n x 2n)")->capture_default_str();
    }
    sub->add_option("--p", cfg.p, "residue characteristic (odd prime)")->capture_default_str();
    sub->add_option("--m", cfg.m, "residue field degree, q = p^m")->capture_default_str();
    sub->add_option("--format", cfg.format, "json | tsv")
        ->check(CLI::IsMember({"json", "tsv"}))
        ->capture_default_str();
    sub->add_option("--out", cfg.out, "output file (default stdout)");
    sub->add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1, 256))->capture_default_str();
    sub->add_option("--seed", cfg.seed, "seed for generators and sampling")->capture_default_str();
    sub->add_option("--enum-budget", cfg.budgets.enumeration, "max enumerated elements");
    sub->add_option("--orbit-budget", cfg.budgets.orbit_action, "max |C(O_1)| for orbit work");
    sub->add_option("--oracle-budget", cfg.budgets.oracle, "max group order for the oracle");
    sub->add_option("--oracle-classes", cfg.budgets.oracle_classes, "max class count for the oracle");
  };
  auto add_ring = [&](CLI::App* sub) {
    sub->add_option("--ring", cfg.ring, "unramified | ramified")->capture_default_str();
  };

  auto* irr = app.add_subcommand("irr", "dimension multiset of Irr(C(O_2))");
  add_common(irr, true);
  add_ring(irr);
  irr->add_flag("--oracle", cfg.with_oracle, "also enumerate C(O_2) and compare with the oracle");
  auto* orbits = app.add_subcommand("orbits", "orbits of C(O_1) on characters of L(C)");
  add_common(orbits, true);
  add_ring(orbits);
  auto* compare = app.add_subcommand("compare", "irr over the unramified and ramified rings");
  add_common(compare, true);
  auto* rad = app.add_subcommand("radical", "radical of the trace form on M_C");
  add_common(rad, true);
  auto* ext = app.add_subcommand("verify-ext", "extensions of phi to T_C(phi) on every orbit");
  add_common(ext, true);
  add_ring(ext);
  auto* oracle = app.add_subcommand("oracle", "character degrees of an enumerated group");
  add_common(oracle, true);
  add_ring(oracle);
  oracle->add_option("--level", cfg.level, "1: C(O_1), 2: C(O_2)")->check(CLI::Range(1, 2))->capture_default_str();
  oracle->add_option("--group", cfg.group, "cyclic:k or symmetric:k instead of a classical group");
  auto* groups = app.add_subcommand("groups", "supported groups and their orders");
  add_common(groups, false);
  add_ring(groups);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 4;
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  try {
    Report r;
    if (sub == irr) r = cmd_irr(cfg);
    else if (sub == orbits) r = cmd_orbits(cfg);
    else if (sub == compare) r = cmd_compare(cfg);
    else if (sub == rad) r = cmd_radical(cfg);
    else if (sub == ext) r = cmd_verify_ext(cfg);
    else if (sub == oracle) r = cmd_oracle(cfg);
    else r = cmd_groups(cfg);
    r.json["status"] = r.ok ? "ok" : "check_failed";
    emit(render(r, cfg.format), cfg.out);
    return r.ok ? 0 : 2;
  } catch (const BudgetExceeded& e) {
    emit_error(cfg, "budget_exceeded", e.what());
    return 3;
  } catch (const InvalidConfig& e) {
    emit_error(cfg, "invalid_config", e.what());
    return 4;
  } catch (const std::invalid_argument& e) {
    emit_error(cfg, "invalid_config", e.what());
    return 4;
  } catch (const std::exception& e) {
    emit_error(cfg, "internal_error", e.what());
    return 2;
  }
}

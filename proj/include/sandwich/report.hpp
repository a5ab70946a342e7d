// External interfaces: JSON serialisation for every object the CLI reads or
// writes, DOT and plain-text egg-box rendering, run configuration, the
// per-instance analysis driver, and the append-only results log.

#ifndef SANDWICH_KIT_REPORT_HPP_
#define SANDWICH_KIT_REPORT_HPP_

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "core.hpp"
#include "frame.hpp"
#include "green.hpp"
#include "rank.hpp"
#include "sandwich.hpp"

namespace sandwich_kit {

using json = nlohmann::ordered_json;

inline constexpr char const* kToolVersion = "0.1.0";

// --- core types --------------------------------------------------------------

inline json category_spec_json(Category const& c) {
  return json{{"kind", kind_name(c.kind())}, {"sizes", c.sizes()}};
}

inline Category category_from_json(json const& j, bool unsafe_sizes = false) {
  return build_category(kind_from_name(j.at("kind").get<std::string>()),
                        j.at("sizes").get<std::vector<std::uint32_t>>(),
                        unsafe_sizes);
}

inline json morphism_json(Morphism const& m) {
  return json{{"src", m.src},
              {"dst", m.dst},
              {"payload", std::vector<int>(m.payload.begin(), m.payload.end())}};
}

inline Morphism morphism_from_json(json const& j) {
  Morphism m;
  m.src = j.at("src").get<ObjectId>();
  m.dst = j.at("dst").get<ObjectId>();
  for (auto v : j.at("payload").get<std::vector<int>>()) {
    m.payload.push_back(static_cast<std::uint8_t>(v));
  }
  return m;
}

inline json green_json(GreenData const& g) {
  auto classes = [](GreenRelation const& rel) {
    json out = json::array();
    for (auto const& cls : rel.members) {
      out.push_back(cls);
    }
    return out;
  };
  return json{{"R", classes(g.r)},
              {"L", classes(g.l)},
              {"J", classes(g.j)},
              {"H", classes(g.h)},
              {"D", classes(g.d)}};
}

inline json violations_json(std::vector<Violation> const& vs) {
  json out = json::array();
  for (auto const& v : vs) {
    out.push_back(json{{"check", v.check},
                       {"clause", v.clause},
                       {"witnesses", v.witnesses},
                       {"detail", v.detail}});
  }
  return out;
}

inline json rank_result_json(RankResult const& r) {
  json out;
  if (r.value) {
    out["value"] = *r.value;
  } else {
    out["value"] = "budget";
  }
  out["witness"] = r.witness;
  out["lower_bound"] = r.lower_bound_used;
  out["nodes_explored"] = r.nodes_explored;
  out["seconds"] = r.seconds;
  return out;
}

// --- egg-box rendering --------------------------------------------------------

namespace detail {

  //! Aligned grid; heavy_rows / heavy_cols are block boundaries (drawn with
  //! '=' rules and doubled '||' separators).
  inline std::string grid_text(std::vector<std::vector<std::string>> const& cells,
                               std::vector<std::size_t> const& heavy_rows,
                               std::vector<std::size_t> const& heavy_cols) {
    if (cells.empty()) {
      return "";
    }
    std::size_t width = 1;
    for (auto const& row : cells) {
      for (auto const& c : row) {
        width = std::max(width, c.size());
      }
    }
    auto is_heavy = [](std::vector<std::size_t> const& v, std::size_t k) {
      return std::find(v.begin(), v.end(), k) != v.end();
    };
    std::size_t ncols = cells[0].size();
    std::ostringstream os;
    auto rule = [&](bool heavy) {
      os << '+';
      for (std::size_t c = 0; c < ncols; ++c) {
        if (c > 0 && is_heavy(heavy_cols, c)) {
          os << '+';
        }
        os << std::string(width + 2, heavy ? '=' : '-') << '+';
      }
      os << '\n';
    };
    rule(true);
    for (std::size_t r = 0; r < cells.size(); ++r) {
      if (r > 0) {
        rule(is_heavy(heavy_rows, r));
      }
      for (std::size_t c = 0; c < ncols; ++c) {
        os << (c > 0 && is_heavy(heavy_cols, c) ? "||" : "|") << ' '
           << cells[r][c]
           << std::string(width - cells[r][c].size() + 1, ' ');
      }
      os << "|\n";
    }
    rule(true);
    return os.str();
  }

}  // namespace detail

//! Plain-text egg-box of one D-class: cells show H-class sizes, '#' marks
//! group H-classes.
inline std::string eggbox_text(GreenData const& g, ElemIdx d_class_id) {
  EggBox box = eggbox(g, d_class_id);
  std::vector<std::vector<std::string>> cells(
      box.rows.size(), std::vector<std::string>(box.cols.size()));
  for (std::size_t r = 0; r < box.rows.size(); ++r) {
    for (std::size_t c = 0; c < box.cols.size(); ++c) {
      ElemIdx h = box.cell[r][c];
      std::string s = h == ElemIdx(-1)
                          ? std::string("?")
                          : std::to_string(g.h.members[h].size());
      if (box.cell_is_group[r][c]) {
        s += '#';
      }
      cells[r][c] = s;
    }
  }
  std::ostringstream os;
  os << "D" << d_class_id << " (" << g.d.members[d_class_id].size()
     << " elements, " << box.rows.size() << "x" << box.cols.size() << ")\n";
  os << detail::grid_text(cells, {}, {});
  return os.str();
}

inline std::string eggbox_text_all(GreenData const& g) {
  std::string out;
  for (ElemIdx d = 0; d < g.d.class_count(); ++d) {
    out += eggbox_text(g, d);
  }
  return out;
}

namespace detail {

  inline std::string dot_table(GreenData const& g, EggBox const& box) {
    std::ostringstream os;
    os << "<<TABLE BORDER=\"1\" CELLBORDER=\"1\" CELLSPACING=\"0\">";
    for (std::size_t r = 0; r < box.rows.size(); ++r) {
      os << "<TR>";
      for (std::size_t c = 0; c < box.cols.size(); ++c) {
        ElemIdx h = box.cell[r][c];
        os << "<TD"
           << (box.cell_is_group[r][c] ? " BGCOLOR=\"lightgray\"" : "") << ">"
           << (h == ElemIdx(-1) ? std::string("?")
                                : std::to_string(g.h.members[h].size()))
           << "</TD>";
      }
      os << "</TR>";
    }
    os << "</TABLE>>";
    return os.str();
  }

}  // namespace detail

//! DOT rendering: one cluster per D-class, each holding an HTML-table node.
inline std::string eggbox_dot(GreenData const& g, std::string const& name) {
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n  node [shape=plaintext];\n";
  for (ElemIdx d = 0; d < g.d.class_count(); ++d) {
    EggBox box = eggbox(g, d);
    os << "  subgraph cluster_d" << d << " {\n"
       << "    label=\"D" << d << "\";\n"
       << "    d" << d << " [label=" << detail::dot_table(g, box) << "];\n"
       << "  }\n";
  }
  os << "}\n";
  return os.str();
}

//! Paired text egg-boxes for one D^a-class of P^a: the left box groups rows
//! and columns into hat-class blocks (heavy separators); the right box is
//! the corresponding D-class of W.
inline std::string frame_eggbox_text(RegularFrame const& fr, HatData const& hat,
                                     ElemIdx d_class_id) {
  auto const& g = fr.pa_green;
  auto const& members = g.d.members[d_class_id];
  // order rows by (hat-R class, R class), columns by (hat-L class, L class)
  std::vector<std::pair<ElemIdx, ElemIdx>> rows, cols;
  for (auto x : members) {
    rows.emplace_back(hat.rhat.cls[x], g.r.cls[x]);
    cols.emplace_back(hat.lhat.cls[x], g.l.cls[x]);
  }
  auto dedup = [](std::vector<std::pair<ElemIdx, ElemIdx>>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedup(rows);
  dedup(cols);
  std::vector<std::size_t> heavy_rows, heavy_cols;
  for (std::size_t t = 1; t < rows.size(); ++t) {
    if (rows[t].first != rows[t - 1].first) {
      heavy_rows.push_back(t);
    }
  }
  for (std::size_t t = 1; t < cols.size(); ++t) {
    if (cols[t].first != cols[t - 1].first) {
      heavy_cols.push_back(t);
    }
  }
  std::vector<std::vector<std::string>> cells(
      rows.size(), std::vector<std::string>(cols.size(), "."));
  for (auto x : members) {
    auto ri = std::lower_bound(rows.begin(), rows.end(),
                               std::make_pair(hat.rhat.cls[x], g.r.cls[x]))
              - rows.begin();
    auto ci = std::lower_bound(cols.begin(), cols.end(),
                               std::make_pair(hat.lhat.cls[x], g.l.cls[x]))
              - cols.begin();
    std::string s = std::to_string(g.h.members[g.h.cls[x]].size());
    if (g.is_group_h_class(x)) {
      s += '#';
    }
    cells[ri][ci] = s;
  }
  std::ostringstream os;
  os << "P^a D" << d_class_id << " (" << members.size()
     << " elements; heavy lines bound hat-classes)\n";
  os << detail::grid_text(cells, heavy_rows, heavy_cols);

  // the corresponding D-class of W
  ElemIdx wd = fr.w_green.d.cls[fr.phi[members[0]]];
  os << "corresponding W ";
  os << eggbox_text(fr.w_green, wd);
  return os.str();
}

//! Paired DOT rendering for every D^a-class of P^a next to its W image.
inline std::string frame_eggbox_dot(RegularFrame const& fr, HatData const& hat,
                                    std::string const& name) {
  auto const& g = fr.pa_green;
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n  node [shape=plaintext];\n";
  for (ElemIdx d = 0; d < g.d.class_count(); ++d) {
    auto const& members = g.d.members[d];
    // hat blocks as an outer table, H-cells as inner tables
    std::vector<ElemIdx> rblocks, lblocks;
    for (auto x : members) {
      rblocks.push_back(hat.rhat.cls[x]);
      lblocks.push_back(hat.lhat.cls[x]);
    }
    auto dedup = [](std::vector<ElemIdx>& v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    dedup(rblocks);
    dedup(lblocks);
    os << "  subgraph cluster_pa_d" << d << " {\n    label=\"P^a D" << d
       << "\";\n    pa_d" << d
       << " [label=<<TABLE BORDER=\"2\" CELLBORDER=\"1\" CELLSPACING=\"0\">";
    for (auto rb : rblocks) {
      os << "<TR>";
      for (auto lb : lblocks) {
        // inner grid of this hat block
        std::vector<ElemIdx> rs, ls;
        for (auto x : members) {
          if (hat.rhat.cls[x] == rb && hat.lhat.cls[x] == lb) {
            rs.push_back(g.r.cls[x]);
            ls.push_back(g.l.cls[x]);
          }
        }
        dedup(rs);
        dedup(ls);
        os << "<TD><TABLE BORDER=\"0\" CELLBORDER=\"1\" CELLSPACING=\"0\">";
        for (auto rc : rs) {
          os << "<TR>";
          for (auto lc : ls) {
            std::string label = "?";
            bool group = false;
            for (auto x : members) {
              if (g.r.cls[x] == rc && g.l.cls[x] == lc) {
                label = std::to_string(g.h.members[g.h.cls[x]].size());
                group = g.is_group_h_class(x);
                break;
              }
            }
            os << "<TD" << (group ? " BGCOLOR=\"lightgray\"" : "") << ">"
               << label << "</TD>";
          }
          os << "</TR>";
        }
        os << "</TABLE></TD>";
      }
      os << "</TR>";
    }
    os << "</TABLE>>];\n  }\n";
    ElemIdx wd = fr.w_green.d.cls[fr.phi[members[0]]];
    EggBox wbox = eggbox(fr.w_green, wd);
    os << "  subgraph cluster_w_of_d" << d << " {\n    label=\"W D" << wd
       << "\";\n    w_d" << d << " [label="
       << detail::dot_table(fr.w_green, wbox) << "];\n  }\n";
    os << "  pa_d" << d << " -> w_d" << d << " [style=dashed, label=\"phi\"];\n";
  }
  os << "}\n";
  return os.str();
}

// --- run configuration ---------------------------------------------------------

struct Budgets {
  std::size_t elements = 20000;
  std::uint64_t rank_nodes = 50'000'000;
  double seconds = 120.0;
};

//! Budget profile from the environment: SANDWICH_KIT_PROFILE=desk (default)
//! or roomy (10x).
inline Budgets default_budgets() {
  Budgets b;
  if (char const* p = std::getenv("SANDWICH_KIT_PROFILE")) {
    if (std::string(p) == "roomy") {
      b.elements *= 10;
      b.rank_nodes *= 10;
      b.seconds *= 10;
    }
  }
  return b;
}

inline std::vector<std::string> const kAllChecks
    = {"green", "psets", "pullback", "hat", "fiber", "mi", "inverse", "rank"};

struct RunConfig {
  Kind kind = Kind::partialmap;
  std::vector<std::uint32_t> sizes = {2, 2};
  std::string scope = "all";  // all | pair | single
  ObjectId i = 0, j = 0;
  ElemIdx a = 0;
  std::vector<std::string> checks = kAllChecks;
  Budgets budgets = default_budgets();
  bool unsafe_sizes = false;
};

inline json run_config_json(RunConfig const& cfg) {
  return json{{"category", json{{"kind", kind_name(cfg.kind)},
                                {"sizes", cfg.sizes}}},
              {"scope", json{{"mode", cfg.scope},
                             {"i", cfg.i},
                             {"j", cfg.j},
                             {"a", cfg.a}}},
              {"checks", cfg.checks},
              {"budgets", json{{"elements", cfg.budgets.elements},
                               {"rank_nodes", cfg.budgets.rank_nodes},
                               {"seconds", cfg.budgets.seconds}}},
              {"unsafe_sizes", cfg.unsafe_sizes}};
}

inline RunConfig run_config_from_json(json const& j) {
  RunConfig cfg;
  cfg.kind = kind_from_name(j.at("category").at("kind").get<std::string>());
  cfg.sizes = j.at("category").at("sizes").get<std::vector<std::uint32_t>>();
  if (j.contains("scope")) {
    auto const& s = j.at("scope");
    cfg.scope = s.value("mode", "all");
    cfg.i = s.value("i", 0u);
    cfg.j = s.value("j", 0u);
    cfg.a = s.value("a", 0u);
  }
  if (j.contains("checks")) {
    cfg.checks = j.at("checks").get<std::vector<std::string>>();
  }
  if (j.contains("budgets")) {
    auto const& b = j.at("budgets");
    cfg.budgets.elements = b.value("elements", cfg.budgets.elements);
    cfg.budgets.rank_nodes = b.value("rank_nodes", cfg.budgets.rank_nodes);
    cfg.budgets.seconds = b.value("seconds", cfg.budgets.seconds);
  }
  cfg.unsafe_sizes = j.value("unsafe_sizes", false);
  return cfg;
}

//! Stable 64-bit FNV-1a over the canonical config JSON.
inline std::string config_hash(RunConfig const& cfg) {
  std::string s = run_config_json(cfg).dump();
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

// --- the per-instance analysis driver -------------------------------------------

//! Runs the selected checks for one sandwich element and returns the
//! instance report; pass the precomputed ambient Green's data.
inline json analyze_instance(Category const& c, GreenData const& ambient,
                             ObjectId i, ObjectId j, ElemIdx a_idx,
                             std::vector<std::string> const& checks,
                             Budgets const& budgets) {
  auto wants = [&checks](std::string const& name) {
    return std::find(checks.begin(), checks.end(), name) != checks.end();
  };
  GreenOptions gopts;
  gopts.budget = budgets.elements;
  RankBudget rbudget{budgets.rank_nodes, budgets.seconds};

  Morphism const& a = c.at(j, i, a_idx);
  auto sw = sandwich(c, i, j, a);
  json rep;
  rep["i"] = i;
  rep["j"] = j;
  rep["a"] = a_idx;
  rep["a_payload"] = morphism_json(a)["payload"];

  std::vector<Violation> violations;
  auto collect = [&violations](std::vector<Violation> const& vs) {
    violations.insert(violations.end(), vs.begin(), vs.end());
  };

  auto st = stability(c, ambient, a);
  rep["stability"] = json{{"r_stable", st.r_stable}, {"l_stable", st.l_stable}};
  if (!st.r_stable || !st.l_stable) {
    violations.push_back({"stability", "finite catalog element stable", {a_idx}, ""});
  }
  auto flags = invertibility_flags(sw);
  rep["flags"] = json{{"right_inv", flags.right_inv},
                      {"left_inv", flags.left_inv},
                      {"cancel_r", flags.cancel_r},
                      {"cancel_l", flags.cancel_l},
                      {"cancel_rl", flags.cancel_rl}};
  auto ps = p_sets(sw, ambient);
  rep["p_set_sizes"] = json{{"p1", ps.p1.size()},
                            {"p2", ps.p2.size()},
                            {"p3", ps.p3.size()},
                            {"p", ps.p.size()}};

  if (wants("green")) {
    auto tr = green_transfer_check(sw, ambient, gopts);
    collect(tr.violations);
    rep["green_class_counts"] = json{{"R", tr.green.r.class_count()},
                                     {"L", tr.green.l.class_count()},
                                     {"J", tr.green.j.class_count()},
                                     {"H", tr.green.h.class_count()},
                                     {"D", tr.green.d.class_count()}};
  }
  if (wants("psets")) {
    collect(p_set_checks(sw, ambient));
  }

  bool needs_frame = wants("pullback") || wants("hat") || wants("fiber")
                     || wants("mi") || wants("inverse") || wants("rank");
  if (needs_frame) {
    if (!is_sandwich_regular(sw)) {
      rep["frame"] = json{{"sandwich_regular", false}};
    } else {
      auto fr = build_frame(sw, ambient, std::nullopt, gopts);
      collect(fr.violations);
      json fj;
      fj["sandwich_regular"] = true;
      fj["p_size"] = fr.pa.size();
      fj["w_size"] = fr.w.size();
      fj["t1_size"] = fr.t1.size();
      fj["t2_size"] = fr.t2.size();
      fj["va_size"] = fr.va.size();
      if (wants("pullback")) {
        auto pb = pullback_check(fr);
        collect(pb.violations);
        fj["pullback_pairs"] = pb.pair_count;
      }
      if (wants("hat") || wants("rank")) {
        auto hat = hat_analysis(fr);
        collect(hat.violations);
        auto const& info = hat.hhat_info[hat.hhat.cls[fr.b_in_pa]];
        fj["r"] = info.rows;
        fj["l"] = info.cols;
      }
      if (wants("fiber")) {
        auto fb = idempotent_fiber(fr);
        collect(fb.violations);
        fj["ea_size"] = fb.ea_size;
        fj["ea_generated_size"] = fb.ea_generated_size;
      }
      if (wants("mi")) {
        auto mi = mi_structure(fr);
        collect(mi.violations);
        fj["mi_dominated"] = mi.mi_dominated;
        fj["mi_size"] = mi.mi.size();
        fj["rp_size"] = mi.rp.size();
      }
      if (wants("inverse")) {
        auto inv = inverse_case(fr);
        collect(inv.violations);
        fj["inverse_case"] = inv.uniquely_sandwich_regular;
      }
      if (wants("rank")) {
        auto rf = rank_formula_check(fr, rbudget);
        collect(rf.violations);
        fj["rank"] = json{{"rank_pa", rank_result_json(rf.rank_pa)},
                          {"rank_w_rel_units", rank_result_json(rf.rank_w_rel_units)},
                          {"rank_gw", rank_result_json(rf.rank_gw)},
                          {"rank_ea", rank_result_json(rf.rank_ea)},
                          {"idrank_ea", rank_result_json(rf.idrank_ea)},
                          {"rank_eb", rank_result_json(rf.rank_eb)},
                          {"idrank_eb", rank_result_json(rf.idrank_eb)},
                          {"inequality_only", rf.inequality_only}};
        auto bound = sandwich_rank_lower_bound(sw, ambient, rbudget);
        collect(bound.violations);
        fj["rank_lower_bound"] = bound.bound;
        fj["rank_sandwich"] = rank_result_json(bound.brute);
      }
      rep["frame"] = fj;
    }
  }
  rep["violations"] = violations_json(violations);
  return rep;
}

//! True when any rank search inside the instance report hit its budget.
inline bool report_hit_budget(json const& instance) {
  if (!instance.contains("frame")) {
    return false;
  }
  auto const& f = instance["frame"];
  if (f.contains("rank")) {
    for (auto const& [k, v] : f["rank"].items()) {
      if (v.is_object() && v.contains("value") && v["value"].is_string()) {
        return true;
      }
    }
    if (f.contains("rank_sandwich")
        && f["rank_sandwich"]["value"].is_string()) {
      return true;
    }
  }
  return false;
}

//! In-scope (i, j, a) triples for a config, in canonical order.
inline std::vector<std::tuple<ObjectId, ObjectId, ElemIdx>> config_instances(
    Category const& c, RunConfig const& cfg) {
  std::vector<std::tuple<ObjectId, ObjectId, ElemIdx>> out;
  auto add_pair = [&](ObjectId i, ObjectId j) {
    for (ElemIdx a = 0; a < c.homset_size(j, i); ++a) {
      out.emplace_back(i, j, a);
    }
  };
  if (cfg.scope == "single") {
    out.emplace_back(cfg.i, cfg.j, cfg.a);
  } else if (cfg.scope == "pair") {
    add_pair(cfg.i, cfg.j);
  } else {
    for (ObjectId i = 0; i < c.object_count(); ++i) {
      for (ObjectId j = 0; j < c.object_count(); ++j) {
        add_pair(i, j);
      }
    }
  }
  return out;
}

//! Full analyze run: every in-scope instance, one RunRecord.
inline json run_analyze(RunConfig const& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  Category c = build_category(cfg.kind, cfg.sizes, cfg.unsafe_sizes);
  GreenOptions gopts;
  gopts.budget = cfg.budgets.elements;
  GreenData ambient = green_category(c, gopts);

  json instances = json::array();
  std::size_t violation_count = 0;
  bool budget_hit = false;
  for (auto const& [i, j, a] : config_instances(c, cfg)) {
    json inst = analyze_instance(c, ambient, i, j, a, cfg.checks, cfg.budgets);
    violation_count += inst["violations"].size();
    budget_hit = budget_hit || report_hit_budget(inst);
    instances.push_back(std::move(inst));
  }
  json rec;
  rec["config_hash"] = config_hash(cfg);
  rec["version"] = kToolVersion;
  rec["config"] = run_config_json(cfg);
  rec["instances"] = std::move(instances);
  rec["violation_count"] = violation_count;
  rec["budget_exceeded"] = budget_hit;
  rec["wall_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rec;
}

// --- results log ----------------------------------------------------------------

inline std::set<std::string> completed_hashes(std::string const& path) {
  std::set<std::string> out;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    auto j = json::parse(line, nullptr, false);
    if (!j.is_discarded() && j.contains("config_hash")) {
      out.insert(j["config_hash"].get<std::string>());
    }
  }
  return out;
}

inline void append_record(std::string const& path, json const& record) {
  std::ofstream out(path, std::ios::app);
  if (!out) {
    throw std::runtime_error("cannot open results log: " + path);
  }
  out << record.dump() << '\n';
}

}  // namespace sandwich_kit

#endif  // SANDWICH_KIT_REPORT_HPP_

// sandwich-kit: analyze | eggbox | batch | rank
//
// Exit codes: 0 all checks passed, 1 theorem-check violation, 2 usage error,
// 3 a budget was exceeded.

#include <condition_variable>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <thread>

#include <CLI11.hpp>

#include <sandwich/toolkit.hpp>

namespace {

using namespace sandwich_kit;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct CommonArgs {
  std::string kind = "partialmap";
  std::vector<std::uint32_t> sizes = {2, 2};
  std::optional<std::uint32_t> i, j;
  std::optional<std::string> a;
  std::vector<std::string> checks;
  std::string config_file;
  std::string out;
  std::string dot;
  bool unsafe_sizes = false;
  Budgets budgets = default_budgets();
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_checks) {
  cmd->add_option("--kind", args.kind, "category kind")
      ->check(CLI::IsMember({"fullmap", "partialmap", "injpartial", "matf2"}));
  cmd->add_option("--sizes", args.sizes, "object sizes")->delimiter(',');
  cmd->add_option("--i", args.i, "source object of the hom-set");
  cmd->add_option("--j", args.j, "target object of the hom-set");
  cmd->add_option("--a", args.a,
                  "sandwich element of hom(j,i): an index, or a payload like 1,2");
  if (with_checks) {
    cmd->add_option("--checks", args.checks, "subset of checks to run")
        ->delimiter(',')
        ->check(CLI::IsMember(kAllChecks));
  }
  cmd->add_option("--config", args.config_file, "JSON run configuration file");
  cmd->add_option("--out", args.out, "output file (default: stdout)");
  cmd->add_option("--dot", args.dot, "DOT output file");
  cmd->add_flag("--unsafe-sizes", args.unsafe_sizes,
                "override the hom-set size caps");
  cmd->add_option("--budget-elements", args.budgets.elements,
                  "Green's engine element cap");
  cmd->add_option("--budget-rank-nodes", args.budgets.rank_nodes,
                  "rank search node cap");
  cmd->add_option("--budget-seconds", args.budgets.seconds,
                  "rank search time cap per search");
}

RunConfig config_from_args(CommonArgs const& args, Category const& c) {
  RunConfig cfg;
  cfg.kind = kind_from_name(args.kind);
  cfg.sizes = args.sizes;
  cfg.budgets = args.budgets;
  cfg.unsafe_sizes = args.unsafe_sizes;
  if (!args.checks.empty()) {
    cfg.checks = args.checks;
  }
  if (args.i && args.j) {
    cfg.i = *args.i;
    cfg.j = *args.j;
    if (args.a) {
      cfg.scope = "single";
      std::string const& s = *args.a;
      if (s.find(',') == std::string::npos
          && s.find('[') == std::string::npos) {
        cfg.a = static_cast<ElemIdx>(std::stoul(s));
      } else {
        Morphism m;
        m.src = cfg.j;
        m.dst = cfg.i;
        for (char ch : s) {
          if (ch >= '0' && ch <= '9') {
            m.payload.push_back(static_cast<std::uint8_t>(ch - '0'));
          }
        }
        if (!c.valid(m)) {
          throw CLI::ValidationError("--a", "payload is not a morphism of hom(j,i)");
        }
        cfg.a = c.index_of(m);
      }
      if (cfg.a >= c.homset_size(cfg.j, cfg.i)) {
        throw CLI::ValidationError("--a", "index out of range for hom(j,i)");
      }
    } else {
      cfg.scope = "pair";
    }
  } else if (args.i || args.j || args.a) {
    throw CLI::ValidationError("--i/--j", "give both --i and --j (and optionally --a)");
  } else {
    cfg.scope = "all";
  }
  return cfg;
}

RunConfig load_config(CommonArgs const& args) {
  if (!args.config_file.empty()) {
    std::ifstream in(args.config_file);
    if (!in) {
      throw CLI::ValidationError("--config", "cannot open " + args.config_file);
    }
    json j = json::parse(in);
    return run_config_from_json(j);
  }
  Category c = build_category(kind_from_name(args.kind), args.sizes,
                              args.unsafe_sizes);
  return config_from_args(args, c);
}

void write_output(std::string const& path, std::string const& content) {
  if (path.empty()) {
    std::cout << content;
  } else {
    std::ofstream out(path);
    if (!out) {
      throw std::runtime_error("cannot open output file: " + path);
    }
    out << content;
  }
}

int cmd_analyze(CommonArgs const& args) {
  RunConfig cfg = load_config(args);
  json rec = run_analyze(cfg);
  write_output(args.out, rec.dump(2) + "\n");
  if (rec["violation_count"].get<std::size_t>() > 0) {
    return kExitViolation;
  }
  if (rec["budget_exceeded"].get<bool>()) {
    return kExitBudget;
  }
  return kExitOk;
}

int cmd_eggbox(CommonArgs const& args) {
  RunConfig cfg = load_config(args);
  Category c = build_category(cfg.kind, cfg.sizes, cfg.unsafe_sizes);
  GreenOptions gopts;
  gopts.budget = cfg.budgets.elements;
  GreenData ambient = green_category(c, gopts);

  std::string text;
  std::string dot;
  for (auto const& [i, j, a] : config_instances(c, cfg)) {
    auto sw = sandwich(c, i, j, c.at(j, i, a));
    if (sw.size() > 4096) {
      std::cerr << "eggbox: instance too large to lay out\n";
      return kExitBudget;
    }
    std::string head = "== " + kind_name(cfg.kind) + " i=" + std::to_string(i)
                       + " j=" + std::to_string(j) + " a=" + std::to_string(a)
                       + " ==\n";
    text += head;
    if (is_sandwich_regular(sw)) {
      auto fr = build_frame(sw, ambient, std::nullopt, gopts);
      auto hat = hat_analysis(fr);
      for (ElemIdx d = 0; d < fr.pa_green.d.class_count(); ++d) {
        text += frame_eggbox_text(fr, hat, d);
      }
      dot += frame_eggbox_dot(fr, hat,
                              "eggbox_" + std::to_string(i) + "_"
                                  + std::to_string(j) + "_" + std::to_string(a));
    } else {
      auto sg = sandwich_green(sw, gopts);
      text += eggbox_text_all(sg);
      dot += eggbox_dot(sg, "eggbox_" + std::to_string(i) + "_"
                                + std::to_string(j) + "_" + std::to_string(a));
    }
  }
  write_output(args.out, text);
  if (!args.dot.empty()) {
    write_output(args.dot, dot);
  }
  return kExitOk;
}

struct BatchArgs {
  CommonArgs common;
  std::string log = "sandwich_batch.jsonl";
  std::uint32_t jobs = 1;
};

std::vector<RunConfig> batch_configs(BatchArgs const& args) {
  // desk profile: every kind at sizes <= 2 over one or two objects, plus
  // fullmap up to size 3
  std::vector<RunConfig> out;
  for (Kind k : catalog_kinds) {
    std::uint32_t cap = (k == Kind::fullmap) ? 3 : 2;
    std::vector<std::vector<std::uint32_t>> tuples;
    for (std::uint32_t s = 1; s <= cap; ++s) {
      tuples.push_back({s});
    }
    for (std::uint32_t s = 1; s <= cap; ++s) {
      for (std::uint32_t t = 1; t <= cap; ++t) {
        tuples.push_back({s, t});
      }
    }
    for (auto const& sizes : tuples) {
      RunConfig cfg;
      cfg.kind = k;
      cfg.sizes = sizes;
      cfg.scope = "all";
      cfg.budgets = args.common.budgets;
      if (!args.common.checks.empty()) {
        cfg.checks = args.common.checks;
      }
      out.push_back(cfg);
    }
  }
  return out;
}

int cmd_batch(BatchArgs const& args) {
  auto configs = batch_configs(args);
  auto done = completed_hashes(args.log);
  std::vector<std::size_t> todo;
  for (std::size_t t = 0; t < configs.size(); ++t) {
    if (!done.count(config_hash(configs[t]))) {
      todo.push_back(t);
    }
  }

  std::mutex mu;
  std::condition_variable cv;
  std::size_t next_to_run = 0;
  std::size_t next_to_write = 0;
  std::vector<std::optional<json>> results(todo.size());
  bool violations = false, budget = false;

  auto worker = [&] {
    for (;;) {
      std::size_t mine;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next_to_run >= todo.size()) {
          return;
        }
        mine = next_to_run++;
      }
      json rec = run_analyze(configs[todo[mine]]);
      {
        std::unique_lock<std::mutex> lock(mu);
        results[mine] = std::move(rec);
        // single writer appends strictly in canonical order
        while (next_to_write < todo.size() && results[next_to_write]) {
          auto const& r = *results[next_to_write];
          append_record(args.log, r);
          violations = violations || r["violation_count"].get<std::size_t>() > 0;
          budget = budget || r["budget_exceeded"].get<bool>();
          results[next_to_write].reset();
          ++next_to_write;
        }
        cv.notify_all();
      }
    }
  };

  std::uint32_t jobs = std::max<std::uint32_t>(1, args.jobs);
  std::vector<std::thread> pool;
  for (std::uint32_t t = 1; t < jobs; ++t) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto& th : pool) {
    th.join();
  }
  std::cerr << "batch: " << todo.size() << " new record(s), "
            << configs.size() - todo.size() << " skipped\n";
  if (violations) {
    return kExitViolation;
  }
  if (budget) {
    return kExitBudget;
  }
  return kExitOk;
}

struct RankArgs {
  CommonArgs common;
  std::string target = "sandwich";
};

int cmd_rank(RankArgs const& args) {
  RunConfig cfg = load_config(args.common);
  if (cfg.scope != "single") {
    throw CLI::ValidationError("rank", "needs --i, --j and --a");
  }
  Category c = build_category(cfg.kind, cfg.sizes, cfg.unsafe_sizes);
  GreenOptions gopts;
  gopts.budget = cfg.budgets.elements;
  GreenData ambient = green_category(c, gopts);
  auto sw = sandwich(c, cfg.i, cfg.j, c.at(cfg.j, cfg.i, cfg.a));
  RankBudget rb{cfg.budgets.rank_nodes, cfg.budgets.seconds};

  RankResult res;
  if (args.target == "sandwich") {
    res = rank(sw.to_semigroup(), rb);
  } else {
    if (!is_sandwich_regular(sw)) {
      std::cerr << "rank: a is not sandwich-regular; only --target sandwich applies\n";
      return kExitUsage;
    }
    auto fr = build_frame(sw, ambient, std::nullopt, gopts);
    if (args.target == "pa") {
      res = rank(fr.pa_sg, rb);
    } else if (args.target == "w") {
      res = rank(fr.w_sg, rb);
    } else if (args.target == "ea") {
      auto ea = subsemigroup(fr.pa_sg, generated(fr.pa_sg, fr.pa_sg.idempotents()));
      res = rank(ea.sg, rb);
    } else {
      auto eb = subsemigroup(fr.w_sg, generated(fr.w_sg, fr.w_sg.idempotents()));
      res = rank(eb.sg, rb);
    }
  }
  write_output(args.common.out, rank_result_json(res).dump(2) + "\n");
  return res.exceeded() ? kExitBudget : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite sandwich semigroup toolkit"};
  app.require_subcommand(1);

  CommonArgs analyze_args;
  auto* analyze = app.add_subcommand("analyze", "run theorem checks");
  add_common(analyze, analyze_args, true);

  CommonArgs eggbox_args;
  auto* eggbox = app.add_subcommand("eggbox", "emit egg-box diagrams");
  add_common(eggbox, eggbox_args, false);

  BatchArgs batch_args;
  auto* batch = app.add_subcommand("batch", "verify the whole desk catalog");
  add_common(batch, batch_args.common, true);
  batch->add_option("--log", batch_args.log, "append-only results log");
  batch->add_option("--jobs", batch_args.jobs, "worker count");

  RankArgs rank_args;
  auto* rankcmd = app.add_subcommand("rank", "exact rank computations");
  add_common(rankcmd, rank_args.common, false);
  rankcmd->add_option("--target", rank_args.target, "what to rank")
      ->check(CLI::IsMember({"sandwich", "pa", "w", "ea", "eb"}));

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (analyze->parsed()) {
      return cmd_analyze(analyze_args);
    }
    if (eggbox->parsed()) {
      return cmd_eggbox(eggbox_args);
    }
    if (batch->parsed()) {
      return cmd_batch(batch_args);
    }
    if (rankcmd->parsed()) {
      return cmd_rank(rank_args);
    }
  } catch (budget_error const& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return kExitBudget;
  } catch (CLI::ValidationError const& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (std::invalid_argument const& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitViolation;
  }
  return kExitUsage;
}

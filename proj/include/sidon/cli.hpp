#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sidon/constructors.hpp"
#include "sidon/ddc.hpp"
#include "sidon/enclosure.hpp"
#include "sidon/errors.hpp"
#include "sidon/genfun.hpp"
#include "sidon/pattern.hpp"
#include "sidon/search.hpp"
#include "sidon/sequence.hpp"
#include "sidon/tail.hpp"
#include "sidon/verify.hpp"

namespace sidon::cli {

using json = nlohmann::ordered_json;

enum Exit : int { ok = 0, verification_false = 1, usage = 2, resource = 3 };

/// Output choice; `automatic` means text for sequence-producing commands, JSON otherwise.
enum class Format { automatic, json, table, text, csv };

struct Common {
  std::string format = "auto";
  unsigned bits = default_precision_bits();
  int digits = 6;
};

namespace detail {

inline std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline json enc(const Enclosure& e, int digits) {
  json j;
  j["lo"] = to_decimal(e.lo(), digits, Rounding::down);
  j["hi"] = to_decimal(e.hi(), digits, Rounding::up);
  j["exact"] = e.is_exact();
  if (e.is_exact()) j["value"] = to_string(e.lo());
  return j;
}

inline json approx(double value, double error) {
  return json{{"value", fmt_double(value)}, {"error_estimate", fmt_double(error)}, {"exact", false}};
}

inline json seq_json(const Sequence& s) {
  json a = json::array();
  for (value_t v : s) a.push_back(v);
  return a;
}

inline json provenance(std::initializer_list<std::pair<const char*, const char*>> items) {
  json a = json::array();
  for (const auto& [f, anchor] : items) a.push_back({{"formula", f}, {"anchor", anchor}});
  return a;
}

/// key path -> scalar text, for the aligned table view.
inline void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
  } else if (j.is_array()) {
    bool scalars = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
    if (scalars) {
      std::string s;
      for (const auto& e : j) {
        if (!s.empty()) s += ' ';
        s += e.is_string() ? e.get<std::string>() : e.dump();
      }
      rows.emplace_back(prefix, s);
    } else {
      for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
    }
  } else {
    rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

inline void print_table(std::ostream& out, const json& envelope) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(envelope, "", rows);
  std::size_t w = 0;
  for (const auto& r : rows) w = std::max(w, r.first.size());
  for (const auto& [k, v] : rows) out << k << std::string(w - k.size() + 2, ' ') << v << '\n';
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}
  Sequence read(const std::string& path) const {
    if (path.empty() || path == "-") return read_sequence(in_);
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open '" + path + "'");
    return read_sequence(f);
  }

 private:
  std::istream& in_;
};

inline std::vector<rational> parse_rational_list(const std::string& text) {
  std::vector<rational> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(parse_rational(item));
  if (out.empty()) throw std::invalid_argument("empty list '" + text + "'");
  return out;
}

struct PatternArgs {
  std::string name = "sidon";
  int h = 2;
  int g = 1;
  void add(CLI::App* app) {
    app->add_option("--pattern", name, "sidon, sum-free or bhg")->capture_default_str();
    app->add_option("--h", h, "h for bhg")->capture_default_str();
    app->add_option("--g", g, "g for bhg")->capture_default_str();
  }
  Pattern get() const { return parse_pattern(name, h, g); }
};

}  // namespace detail

/// Entry point shared by the executable and the tests.
class Runner {
 public:
  Runner(std::istream& in, std::ostream& out, std::ostream& err) : in_(in), out_(out), err_(err), reader_(in) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"Sidon sets: generation, verification, certified sums, search and DDC bounds", "sidon"};
    app.set_help_flag("--help", "print this help and exit");  // -h would clash with --h
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", common_.format, "json, table, text (sequence commands) or csv (search sweeps)")
        ->check(CLI::IsMember({"auto", "json", "table", "text", "csv"}));
    app.add_option("--bits", common_.bits, "working precision in bits")->check(CLI::Range(32u, 1u << 16));
    app.add_option("--digits", common_.digits, "decimal places in rendered values")->check(CLI::Range(0, 200));

    int code = ok;
    add_generate(app, code);
    add_verify(app, code);
    add_sum(app, code);
    add_tail(app, code);
    add_ddc(app, code);
    add_search(app, code);
    add_crosscheck(app, code);
    add_cover(app, code);
    add_saturate(app, code);

    std::vector<std::string> argv_store{"sidon"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
      out_ << app.help();
      return ok;
    } catch (const CLI::CallForAllHelp&) {
      out_ << app.help("", CLI::AppFormatMode::All);
      return ok;
    } catch (const CLI::ParseError& e) {
      err_ << "error: " << e.what() << '\n';
      return usage;
    } catch (const parse_error& e) {
      err_ << "error: malformed sequence: " << e.what() << '\n';
      return usage;
    } catch (const resource_error& e) {
      err_ << "error: " << e.what() << '\n';
      return resource;
    } catch (const precision_error& e) {
      err_ << "error: " << e.what() << '\n';
      return resource;
    } catch (const quadrature_error& e) {
      err_ << "error: " << e.what() << '\n';
      return resource;
    } catch (const infeasible_error& e) {
      err_ << "error: " << e.what() << '\n';
      return resource;
    } catch (const std::invalid_argument& e) {
      err_ << "error: " << e.what() << '\n';
      return usage;
    } catch (const std::domain_error& e) {
      err_ << "error: " << e.what() << '\n';
      return usage;
    } catch (const std::overflow_error& e) {
      err_ << "error: " << e.what() << '\n';
      return usage;
    }
    return code;
  }

 private:
  Format format(bool sequence_command) const {
    const auto& f = common_.format;
    if (f == "auto") return sequence_command ? Format::text : Format::json;
    if (f == "json") return Format::json;
    if (f == "table") return Format::table;
    if (f == "csv") return Format::csv;
    if (!sequence_command) throw std::invalid_argument("--format text applies to generate and saturate only");
    return Format::text;
  }

  void emit(const std::string& command, json params, json results, json prov, bool sequence_command = false) {
    json env;
    env["command"] = command;
    env["parameters"] = std::move(params);
    env["results"] = std::move(results);
    env["provenance"] = std::move(prov);
    Format f = format(sequence_command);
    if (f == Format::csv) throw std::invalid_argument("--format csv applies to search sweeps only");
    if (f == Format::table)
      detail::print_table(out_, env);
    else
      out_ << env.dump(2) << '\n';
  }

  json base_params() const { return json{{"bits", common_.bits}, {"digits", common_.digits}}; }

  // -------------------------------------------------------------------------
  void add_generate(CLI::App& app, int& code) {
    auto* sub = app.add_subcommand("generate", "greedy construction of a pattern-avoiding sequence");
    auto st = std::make_shared<GenerateArgs>();
    st->pattern.add(sub);
    sub->add_option("--count", st->count, "number of terms");
    sub->add_option("--cap", st->cap, "largest value considered");
    sub->add_option("--preset", st->preset, "mian-chowla or zhang")->check(CLI::IsMember({"mian-chowla", "zhang"}));
    sub->add_option("--seed", st->seed, "file with initial terms");
    sub->add_option("--forbidden", st->forbidden, "file with values to skip");
    sub->callback([this, st, &code] { code = generate(*st); });
  }

  struct GenerateArgs {
    detail::PatternArgs pattern;
    std::optional<std::size_t> count;
    std::optional<value_t> cap;
    std::string preset, seed, forbidden;
  };

  int generate(const GenerateArgs& a) {
    if (a.count.has_value() == a.cap.has_value()) throw std::invalid_argument("give exactly one of --count, --cap");
    Sequence result;
    json params = base_params();
    if (!a.preset.empty()) {
      if (!a.count) throw std::invalid_argument("presets take --count");
      if (a.pattern.get() != Pattern::sidon()) throw std::invalid_argument("presets are Sidon sequences");
      result = preset(a.preset, *a.count);
      params["preset"] = a.preset;
    } else {
      GreedySpec spec;
      spec.pattern = a.pattern.get();
      if (!a.seed.empty()) spec.seed = reader_.read(a.seed);
      if (!a.forbidden.empty()) spec.forbidden = reader_.read(a.forbidden);
      if (a.count)
        spec.stop = CountStop{*a.count};
      else
        spec.stop = ValueCapStop{*a.cap};
      result = greedy(spec);
    }
    params["pattern"] = to_string(a.pattern.get());
    if (a.count) params["count"] = *a.count;
    if (a.cap) params["cap"] = *a.cap;
    if (format(true) == Format::text) {
      write_sequence(out_, result);
      return ok;
    }
    json res{{"size", result.size()}, {"terms", detail::seq_json(result)}};
    emit("generate", params, res,
         detail::provenance({{"smallest admissible value at every step", "greedy construction"}}), true);
    return ok;
  }

  // -------------------------------------------------------------------------
  void add_verify(CLI::App& app, int& code) {
    auto* sub = app.add_subcommand("verify", "check a sequence against a pattern");
    auto pat = std::make_shared<detail::PatternArgs>();
    auto input = std::make_shared<std::string>();
    pat->add(sub);
    sub->add_option("input", *input, "sequence file (default: standard input)");
    sub->callback([this, pat, input, &code] {
      Pattern p = pat->get();
      Sequence s = reader_.read(*input);
      auto v = find_violation(s, p);
      json res{{"size", s.size()}, {"holds", !v}};
      if (p.kind == Pattern::Kind::sidon) res["holds_by_differences"] = sidon_by_differences(s);
      if (v) {
        json reps = json::array();
        for (const auto& r : v->representations) reps.push_back(r);
        res["violation"] = {{"sum", v->total}, {"representations", reps}, {"description", v->describe()}};
      }
      json params = base_params();
      params["pattern"] = to_string(p);
      emit("verify", params, res, detail::provenance({{"all h-fold sums counted as multisets", "definition"}}));
      code = v ? verification_false : ok;
    });
  }

  // -------------------------------------------------------------------------
  void add_sum(CLI::App& app, int& code) {
    auto* sub = app.add_subcommand("sum", "certified enclosure of sum s^-alpha, optionally with a tail rule");
    struct Args {
      std::string input, alpha = "1", rule;
      std::optional<std::size_t> k;
      std::optional<value_t> n;
    };
    auto a = std::make_shared<Args>();
    sub->add_option("input", a->input, "sequence file (default: standard input)");
    sub->add_option("--alpha", a->alpha, "exponent, e.g. 1, 3/4, 1.5")->capture_default_str();
    sub->add_option("--k", a->k, "use only the first k terms");
    sub->add_option("--rule", a->rule, "tail rule added to the prefix sum");
    sub->add_option("--n", a->n, "tail rule parameter (default: continues the prefix)");
    sub->callback([this, a, &code] {
      Sequence s = reader_.read(a->input);
      if (a->k) s = s.prefix(*a->k);
      rational alpha = parse_rational(a->alpha);
      std::optional<TailRule> rule;
      if (!a->rule.empty()) {
        value_t n = a->n ? *a->n : 0;
        if (!a->n) n = a->rule == "offset-quadratic" ? s.max() + 1 : static_cast<value_t>(s.size()) + 1;
        rule = parse_tail_rule(a->rule, n);
      }
      json params = base_params();
      params["alpha"] = to_string(alpha);
      params["terms"] = s.size();
      json res;
      res["partial_sum"] = detail::enc(partial_power_sum(s, alpha, s.size(), common_.bits), common_.digits);
      json prov = detail::provenance({{"sum_{i<k} s_i^-alpha", "direct summation"}});
      if (rule) {
        params["rule"] = to_string(*rule);
        Enclosure e = series_enclosure(s, alpha, rule, common_.bits);
        res["series"] = detail::enc(e, common_.digits);
        res["rendered"] = render(e, common_.digits);
        prov.push_back({{"formula", formula(*rule)}, {"anchor", to_string(*rule)}});
      }
      emit("sum", params, res, prov);
      code = ok;
    });
  }

  // -------------------------------------------------------------------------
  void add_tail(CLI::App& app, int& code) {
    auto* sub = app.add_subcommand("tail", "proven upper bound on a reciprocal tail");
    auto rule = std::make_shared<std::string>();
    auto n = std::make_shared<value_t>(0);
    sub->add_option("--rule", *rule, "levine, offset-quadratic, lindstrom-weak, lindstrom-sharp, lindstrom-sharp-strict")
        ->required();
    sub->add_option("--n", *n, "start index (Lindstrom) or value threshold (offset-quadratic)");
    sub->callback([this, rule, n, &code] {
      TailRule r = parse_tail_rule(*rule, *n);
      Enclosure e = tail_upper(r, common_.bits);
      json params = base_params();
      params["rule"] = to_string(r);
      json res{{"upper", detail::enc(e, common_.digits)},
               {"rendered", "≤ " + to_decimal(e.hi(), common_.digits, Rounding::up)}};
      emit("tail", params, res, json::array({{{"formula", formula(r)}, {"anchor", to_string(r)}}}));
      code = ok;
    });
  }

  // -------------------------------------------------------------------------
  struct DdcArgs {
    std::string mode = "self-contained", c, rule, witness;
    std::size_t k = 12, N = taylor_tail_index;
    value_t cap = 600;
    std::uint64_t max_nodes = SearchBudget{}.max_nodes;
  };

  void add_ddc(CLI::App& app, int& code) {
    auto* sub = app.add_subcommand("ddc", "certified upper bound on the largest reciprocal sum of a Sidon set");
    auto a = std::make_shared<DdcArgs>();
    sub->add_option("--mode", a->mode, "self-contained, differential or levine")
        ->check(CLI::IsMember({"self-contained", "differential", "levine"}))
        ->capture_default_str();
    sub->add_option("--c", a->c, "Taylor's constant for differential mode (default: the largest admissible c)");
    sub->add_option("--k", a->k, "exact-search block size")->capture_default_str();
    sub->add_option("--N", a->N, "first tail index")->capture_default_str();
    sub->add_option("--cap", a->cap, "value cap of the block-1 search")->capture_default_str();
    sub->add_option("--rule", a->rule, "tail rule (default lindstrom-sharp)");
    sub->add_option("--witness", a->witness, "Sidon sequence file for the lower end");
    sub->add_option("--max-nodes", a->max_nodes, "block-1 search node budget")->capture_default_str();
    sub->callback([this, a, &code] { code = ddc(*a); });
  }

  TailRule ddc_tail(const DdcArgs& a) const {
    if (a.rule.empty()) return TailRule::lindstrom_sharp(a.N);
    value_t n = a.rule == "offset-quadratic" ? lindstrom_value_floor(a.N) : a.N;
    return parse_tail_rule(a.rule, n);
  }

  int ddc(const DdcArgs& a) {
    json params = base_params();
    params["mode"] = a.mode;
    std::optional<Sequence> witness;
    if (!a.witness.empty()) witness = reader_.read(a.witness);
    BlockPlan plan;
    json extra;
    if (a.mode == "levine") {
      plan = levine_plan();
    } else if (a.mode == "differential") {
      if (a.N != taylor_tail_index) throw std::invalid_argument("differential mode is tied to N = 1100");
      TailRule tail = ddc_tail(a);
      DifferentialAnalysis an = analyze_differential(tail, common_.bits);
      rational c = a.c.empty() ? an.c_max : parse_rational(a.c);
      plan = differential_plan(c, tail);
      params["c"] = a.c.empty() ? "c_max" : to_string(c);
      extra["differential"] = {
          {"note", "differential reproduction: blocks 1 and 2 are externally sourced"},
          {"target", to_string(improved_upper_bound())},
          {"c_max", {{"exact", to_string(an.c_max)}, {"lo", to_decimal(an.c_max, common_.digits, Rounding::down)}}},
          {"admissible_range", "0 < c <= c_max"},
          {"hi_at_c_max", to_decimal(an.hi_at_c_max, common_.digits + 2, Rounding::up)},
          {"hi_at_c_1.9", to_decimal(an.hi_at_c_bound, common_.digits + 2, Rounding::up)},
      };
    } else {
      SearchBudget budget;
      budget.max_nodes = a.max_nodes;
      plan = self_contained_plan(a.k, a.N, a.cap, ddc_tail(a));
      std::get<SearchBlock>(plan.block1).budget = budget;
      params["k"] = a.k;
      params["N"] = a.N;
      params["cap"] = a.cap;
    }
    params["tail"] = to_string(plan.tail);
    DdcReport rep = ddc_upper_bound(plan, witness, common_.bits);
    json blocks = json::array();
    json prov = json::array();
    for (const auto& b : rep.blocks) {
      json jb{{"name", b.name}, {"first_index", b.first_index}};
      if (b.name == "tail")
        jb["last_index"] = "inf";
      else
        jb["last_index"] = b.last_index;
      jb["formula"] = b.formula;
      jb["provenance"] = b.provenance;
      jb["externally_sourced"] = b.external;
      jb["value"] = detail::enc(b.value, common_.digits + 2);
      blocks.push_back(jb);
      prov.push_back({{"formula", b.formula}, {"anchor", b.provenance}});
    }
    json res;
    res["upper_bound"] = to_decimal(rep.bound.hi(), common_.digits + 2, Rounding::up);
    res["lower_bound"] = to_decimal(rep.bound.lo(), common_.digits + 2, Rounding::down);
    res["lower_source"] = rep.lower_source;
    res["enclosure"] = detail::enc(rep.bound, common_.digits + 2);
    res["blocks"] = blocks;
    if (rep.block1_search) {
      const auto& s = *rep.block1_search;
      res["block1_search"] = {{"status", to_string(s.status)},
                              {"optimum_set", detail::seq_json(s.optimum_set)},
                              {"nodes_explored", s.nodes_explored}};
    }
    for (auto& [k, v] : extra.items()) res[k] = v;
    emit("ddc", params, res, prov);
    return ok;
  }

  // -------------------------------------------------------------------------
  struct SearchArgs {
    detail::PatternArgs pattern;
    std::string alpha = "1";
    std::optional<value_t> n_cap, from, to, value_cap;
    std::optional<std::size_t> k;
    bool oracle = false;
    std::uint64_t max_nodes = SearchBudget{}.max_nodes;
    std::optional<long> time_limit_ms;
    unsigned workers = 1;
  };

  void add_search(CLI::App& app, int& code) {
    auto* sub = app.add_subcommand("search", "exact maximum of sum s^-alpha over pattern-avoiding sets");
    auto a = std::make_shared<SearchArgs>();
    a->pattern.add(sub);
    sub->add_option("--alpha", a->alpha, "exponent")->capture_default_str();
    sub->add_option("--n-cap", a->n_cap, "search subsets of [1, n-cap]");
    sub->add_option("--from", a->from, "sweep start");
    sub->add_option("--to", a->to, "sweep end");
    sub->add_option("--k", a->k, "best k-element prefix instead of a subset of [1, n-cap]");
    sub->add_option("--value-cap", a->value_cap, "value cap for --k (default 600)");
    sub->add_flag("--oracle", a->oracle, "use the brute-force oracle (n-cap <= 32)");
    sub->add_option("--max-nodes", a->max_nodes, "node budget")->capture_default_str();
    sub->add_option("--time-limit-ms", a->time_limit_ms, "wall-clock budget (makes results timing dependent)");
    sub->add_option("--workers", a->workers, "threads for sweeps; results do not depend on it")->capture_default_str();
    sub->callback([this, a, &code] { code = search(*a); });
  }

  json result_json(const SearchResult& r) const {
    json j{{"optimum_set", detail::seq_json(r.optimum_set)},
           {"objective", detail::enc(r.objective, common_.digits + 4)},
           {"status", to_string(r.status)},
           {"nodes_explored", r.nodes_explored}};
    if (r.unrestricted_bound) j["unrestricted_bound"] = detail::enc(*r.unrestricted_bound, common_.digits + 4);
    return j;
  }

  int search(const SearchArgs& a) {
    Pattern p = a.pattern.get();
    rational alpha = parse_rational(a.alpha);
    SearchBudget budget;
    budget.max_nodes = a.max_nodes;
    if (a.time_limit_ms) budget.time_limit = std::chrono::milliseconds(*a.time_limit_ms);
    json params = base_params();
    params["pattern"] = to_string(p);
    params["alpha"] = to_string(alpha);
    params["max_nodes"] = a.max_nodes;
    const int modes = int(a.n_cap.has_value()) + int(a.from.has_value() || a.to.has_value()) + int(a.k.has_value());
    if (modes != 1) throw std::invalid_argument("give exactly one of --n-cap, --from/--to, --k");
    json prov = detail::provenance({{"max sum s^-alpha over admissible sets", "branch and bound"}});
    auto status_code = [](const SearchResult& r) -> int { return r.status == SearchStatus::exact_optimum ? ok : resource; };

    if (a.from || a.to) {
      if (!a.from || !a.to) throw std::invalid_argument("--from and --to go together");
      auto results = sweep_max_reciprocal(*a.from, *a.to, p, alpha, budget, a.workers, common_.bits);
      int rc = ok;
      for (const auto& r : results) rc = std::max(rc, status_code(r));
      if (common_.format == "csv") {
        out_ << "n_cap,objective_lo,objective_hi,status,nodes,optimum_set\n";
        for (std::size_t i = 0; i < results.size(); ++i) {
          const auto& r = results[i];
          out_ << (*a.from + i) << ',' << to_decimal(r.objective.lo(), common_.digits + 4, Rounding::down) << ','
               << to_decimal(r.objective.hi(), common_.digits + 4, Rounding::up) << ',' << to_string(r.status) << ','
               << r.nodes_explored << ',' << to_string(r.optimum_set, " ") << '\n';
        }
        return rc;
      }
      params["from"] = *a.from;
      params["to"] = *a.to;
      json rows = json::array();
      for (std::size_t i = 0; i < results.size(); ++i) {
        json j = result_json(results[i]);
        json row{{"n_cap", *a.from + i}};
        for (auto& [k, v] : j.items()) row[k] = v;
        rows.push_back(row);
      }
      emit("search", params, json{{"sweep", rows}}, prov);
      return rc;
    }
    SearchResult r;
    if (a.k) {
      value_t cap = a.value_cap.value_or(600);
      params["k"] = *a.k;
      params["value_cap"] = cap;
      r = best_k_prefix(*a.k, p, alpha, cap, budget, common_.bits);
    } else if (a.oracle) {
      params["n_cap"] = *a.n_cap;
      params["oracle"] = true;
      r = brute_force_oracle(*a.n_cap, p, alpha, common_.bits);
    } else {
      params["n_cap"] = *a.n_cap;
      r = max_reciprocal_subset(*a.n_cap, p, alpha, budget, common_.bits);
    }
    emit("search", params, result_json(r), prov);
    return status_code(r);
  }

  // -------------------------------------------------------------------------
  struct CrossArgs {
    std::string input, check = "all", alpha, grid_kind = "chebyshev";
    std::size_t grid = 200;
    int g = 1;
    double tolerance = 1e-6;
  };

  void add_crosscheck(CLI::App& app, int& code) {
    auto* sub = app.add_subcommand("crosscheck", "generating-function identities and envelopes");
    auto a = std::make_shared<CrossArgs>();
    sub->add_option("input", a->input, "sequence file (default: standard input)");
    sub->add_option("--check", a->check, "mellin, envelope, lalpha, structure or all")
        ->check(CLI::IsMember({"mellin", "envelope", "lalpha", "structure", "all"}))
        ->capture_default_str();
    sub->add_option("--alpha", a->alpha, "comma-separated exponents (mellin: 3/4,1,2; lalpha: 1,3/2)");
    sub->add_option("--grid", a->grid, "envelope grid size")->capture_default_str();
    sub->add_option("--grid-kind", a->grid_kind, "chebyshev or uniform")
        ->check(CLI::IsMember({"chebyshev", "uniform"}))
        ->capture_default_str();
    sub->add_option("--g", a->g, "envelope multiplicity g")->capture_default_str();
    sub->add_option("--tolerance", a->tolerance, "Mellin acceptance threshold")->capture_default_str();
    sub->callback([this, a, &code] { code = crosscheck(*a); });
  }

  int crosscheck(const CrossArgs& a) {
    Sequence s = reader_.read(a.input);
    const bool all = a.check == "all";
    bool passed = true;
    json res;
    json prov = json::array();
    json params = base_params();
    params["check"] = a.check;
    params["terms"] = s.size();
    if (all || a.check == "mellin") {
      json rows = json::array();
      for (const auto& alpha : detail::parse_rational_list(a.alpha.empty() || all ? "3/4,1,2" : a.alpha)) {
        MellinReport m = mellin_crosscheck(s, alpha, {}, common_.bits);
        bool okay = m.discrepancy <= a.tolerance;
        passed = passed && okay;
        rows.push_back({{"alpha", to_string(alpha)},
                        {"quadrature", detail::approx(m.integral, m.error_estimate)},
                        {"direct", detail::enc(m.direct_enclosure, common_.digits + 6)},
                        {"discrepancy", detail::fmt_double(m.discrepancy)},
                        {"passed", okay}});
      }
      res["mellin"] = rows;
      prov.push_back({{"formula", "sum s^-a = 1/Gamma(a) int_0^1 f(u) (-ln u)^(a-1) du/u"}, {"anchor", "Mellin transform"}});
    }
    if (all || a.check == "envelope") {
      GridSpec grid = a.grid_kind == "uniform" ? uniform_grid(a.grid) : chebyshev_grid(a.grid);
      EnvelopeReport e = envelope_check(s, grid, a.g, common_.bits);
      passed = passed && e.passed;
      json j{{"points", grid.points.size()},
             {"min_slack_lo", to_decimal(e.min_slack_lo, common_.digits + 4, Rounding::down)},
             {"passed", e.passed}};
      if (e.violation) j["violation_at"] = to_string(*e.violation);
      res["envelope"] = j;
      prov.push_back({{"formula", "f(t) <= sqrt(2g t/(1-t))"}, {"anchor", "representation count envelope"}});
    }
    if (all || a.check == "lalpha") {
      json rows = json::array();
      for (const auto& alpha : detail::parse_rational_list(a.alpha.empty() || all ? "1,3/2" : a.alpha)) {
        LAlphaReport l = lalpha_probe(s, alpha);
        json row{{"alpha", to_string(alpha)}, {"integral", detail::approx(l.value, l.error_estimate)}};
        if (l.ceiling) {
          bool okay = l.value + l.error_estimate <= l.ceiling->get_d();
          passed = passed && okay;
          row["ceiling"] = to_string(*l.ceiling);
          row["passed"] = okay;
        }
        rows.push_back(row);
      }
      res["lalpha"] = rows;
      prov.push_back({{"formula", "int_0^1 f^a dt <= 2/(1-a/2), a < 2"}, {"anchor", "L^alpha ceiling"}});
    }
    if (all || a.check == "structure") {
      const std::size_t n_max = static_cast<std::size_t>(2 * s.max());
      RepCountProfile prof = representation_counts(s, n_max, 2);
      auto conv = pair_map_coefficients(s, n_max);
      bool agree = prof.counts == conv;
      bool sidon = verify(s, Pattern::sidon());
      bool equivalence = sidon == (prof.max_count() <= 1);
      passed = passed && agree && equivalence;
      res["structure"] = {{"n_max", n_max},
                          {"counts_match_convolution", agree},
                          {"max_count", prof.max_count()},
                          {"sidon", sidon},
                          {"sidon_iff_counts_le_1", equivalence}};
      prov.push_back({{"formula", "(f(z)^2 + f(z^2))/2 = sum r(n) z^n"}, {"anchor", "pair-sum generating function"}});
    }
    res["passed"] = passed;
    emit("crosscheck", params, res, prov);
    return passed ? ok : verification_false;
  }

  // -------------------------------------------------------------------------
  void add_cover(CLI::App& app, int& code) {
    auto* sub = app.add_subcommand("cover", "values m not yet blocked by a Sidon set");
    auto input = std::make_shared<std::string>();
    auto m_max = std::make_shared<std::optional<value_t>>();
    sub->add_option("input", *input, "sequence file (default: standard input)");
    sub->add_option("--m-max", *m_max, "largest m examined (default max(S))");
    sub->callback([this, input, m_max, &code] {
      Sequence s = reader_.read(*input);
      value_t m = m_max->value_or(s.max());
      auto free = sumset_cover(s, m);
      json params = base_params();
      params["m_max"] = m;
      json arr = json::array();
      for (value_t v : free) arr.push_back(v);
      json res{{"uncovered", arr}, {"count", free.size()}, {"saturated", free.empty()}};
      emit("cover", params, res,
           detail::provenance({{"m free iff |m-a| not in S-S and 2m-a not in S", "difference-set cover"}}));
      code = ok;
    });
  }

  // -------------------------------------------------------------------------
  void add_saturate(CLI::App& app, int& code) {
    auto* sub = app.add_subcommand("saturate", "add minimal admissible values up to a cap");
    auto pat = std::make_shared<detail::PatternArgs>();
    auto input = std::make_shared<std::string>();
    auto cap = std::make_shared<std::optional<value_t>>();
    auto n = std::make_shared<std::optional<value_t>>();
    pat->add(sub);
    sub->add_option("input", *input, "prefix file (default: standard input)");
    sub->add_option("--cap", *cap, "explicit cap");
    sub->add_option("--n", *n, "size parameter of the default cap c n^(3/4) (default max(prefix))");
    sub->callback([this, pat, input, cap, n, &code] {
      Pattern p = pat->get();
      Sequence prefix = reader_.read(*input);
      if (cap->has_value() && n->has_value()) throw std::invalid_argument("--cap and --n are exclusive");
      value_t size = n->value_or(std::max<value_t>(prefix.max(), 1));
      value_t c = cap->has_value() ? **cap : default_saturation_cap(size, common_.bits);
      Sequence added = saturate(prefix, c, p);
      std::vector<value_t> all(prefix.begin(), prefix.end());
      all.insert(all.end(), added.begin(), added.end());
      Sequence joined = Sequence::from_unordered(std::move(all));
      if (format(true) == Format::text) {
        write_sequence(out_, joined);
        code = ok;
        return;
      }
      json params = base_params();
      params["pattern"] = to_string(p);
      params["cap"] = c;
      json res{{"added", detail::seq_json(added)}, {"result", detail::seq_json(joined)}};
      if (p == Pattern::sidon()) res["uncovered_through_cap"] = sumset_cover(joined, c);
      emit("saturate", params, res,
           detail::provenance({{"cap = ceil(2^(3/4) / (3 pi)^(3/2) * n^(3/4))", "saturation density argument"}}),
           true);
      code = ok;
    });
  }

  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
  detail::Reader reader_;
  Common common_;
};

inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  return Runner(in, out, err).run(args);
}

}  // namespace sidon::cli

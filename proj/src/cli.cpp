#include "kmflag/cli.hpp"

#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "kmflag/bmp.hpp"
#include "kmflag/category_o.hpp"
#include "kmflag/error.hpp"
#include "kmflag/kl.hpp"
#include "kmflag/moment_graph.hpp"
#include "kmflag/root_datum.hpp"
#include "kmflag/weyl.hpp"

namespace kmflag::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct Config {
  std::string cartan_path;
  std::optional<int> max_length;
  std::string generators;
  std::string base;
  std::string element;
  std::string pairings;
  int depth = 10;
  bool dual = false;
  bool verify = false;
  std::string format;
  std::optional<int> degree_cap;
  int threads = 1;
};

std::size_t size_limit() {
  const char* env = std::getenv("KMFLAG_SIZE_LIMIT");
  if (!env) return WeylGroup::kDefaultSizeLimit;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (*env == '\0' || *end != '\0' || v == 0) throw Error(ErrorCode::BadInput, "KMFLAG_SIZE_LIMIT must be a positive integer");
  return static_cast<std::size_t>(v);
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::CrossCheckFailed:
    case ErrorCode::NegativeCoefficient:
      return kVerification;
    case ErrorCode::SizeLimitExceeded:
    case ErrorCode::CapBoundaryGenerator:
    case ErrorCode::DegreeCapExceeded:
    case ErrorCode::HeightBoundExceeded:
      return kResource;
    default:
      return kValidation;
  }
}

std::string error_document(std::string_view code, const std::string& message) {
  ojson j;
  j["error_code"] = code;
  j["message"] = message;
  return j.dump() + "\n";
}

std::vector<Rational> parse_pairings(const std::string& text, int rank) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t slash = item.find('/');
      std::size_t used = 0;
      if (slash == std::string::npos) {
        out.emplace_back(std::stoll(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } else {
        std::size_t u2 = 0;
        int64_t num = std::stoll(item.substr(0, slash), &used);
        int64_t den = std::stoll(item.substr(slash + 1), &u2);
        if (used != slash || u2 != item.size() - slash - 1 || den == 0) throw std::invalid_argument(item);
        out.emplace_back(num, den);
      }
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::BadInput, "bad pairing '" + item + "'");
    }
  }
  if (static_cast<int>(out.size()) != rank)
    throw Error(ErrorCode::BadInput, "expected " + std::to_string(rank) + " pairings, got " + std::to_string(out.size()));
  return out;
}

BruhatIdeal make_ideal(const WeylGroup& group, const Config& cfg) {
  if (cfg.max_length && !cfg.generators.empty())
    throw Error(ErrorCode::BadInput, "give either --max-length or --generators, not both");
  if (cfg.max_length) return group.enumerate_ideal(*cfg.max_length, size_limit());
  if (cfg.generators.empty()) throw Error(ErrorCode::BadInput, "an ideal is required: --max-length or --generators");
  std::vector<WeylElement> gens;
  std::stringstream ss(cfg.generators);
  std::string word;
  while (std::getline(ss, word, ';')) gens.push_back(group.parse(word));
  return group.ideal_from_generators(gens, size_limit());
}

ojson coeffs_json(const QPolynomial& p) { return ojson(p.coeffs()); }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Runs f(i) for i < n on up to `threads` workers; results are indexed so the
// output does not depend on scheduling.
template <class T>
std::vector<T> parallel_map(std::size_t n, int threads, const std::function<T(std::size_t)>& f) {
  std::vector<std::optional<T>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  auto work = [&](std::size_t start) {
    for (std::size_t i = start; i < n; i += static_cast<std::size_t>(threads)) {
      try {
        slots[i].emplace(f(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1 || n <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, static_cast<std::size_t>(t));
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<T> out;
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::string cmd_roots(const WeylGroup& group, const Config& cfg) {
  const RootDatum& d = group.datum();
  auto roots = d.positive_real_roots(cfg.depth);
  if (cfg.format == "csv") {
    std::string out = "root,height,coroot\n";
    for (const auto& r : roots)
      out += csv_escape(r.to_string()) + "," + std::to_string(r.height()) + "," + csv_escape(d.coroot(r).to_string()) + "\n";
    return out;
  }
  ojson j;
  j["rank"] = d.rank();
  j["kind"] = kind_name(d.kind());
  j["symmetrizer"] = d.symmetrizer();
  if (d.kind() == Kind::Affine) {
    j["dual_labels"] = d.dual_labels();
    j["null_root"] = d.null_root().coords;
  }
  j["depth"] = cfg.depth;
  ojson list = ojson::array();
  for (const auto& r : roots) list.push_back({{"root", r.coords}, {"height", r.height()}, {"coroot", d.coroot(r).coords}});
  j["positive_real_roots"] = list;
  return j.dump(2) + "\n";
}

std::string cmd_weyl_ideal(const WeylGroup& group, const Config& cfg) {
  BruhatIdeal ideal = make_ideal(group, cfg);
  if (cfg.format == "csv") {
    std::string out = "word,length\n";
    for (const auto& w : ideal.elements()) out += csv_escape(w.word_string()) + "," + std::to_string(w.length()) + "\n";
    return out;
  }
  ojson j;
  j["size"] = ideal.size();
  ojson list = ojson::array();
  for (const auto& w : ideal.elements()) list.push_back({{"word", w.word_string()}, {"length", w.length()}});
  j["elements"] = list;
  return j.dump(2) + "\n";
}

std::string cmd_kl(const WeylGroup& group, const Config& cfg, bool inverse) {
  BruhatIdeal ideal = make_ideal(group, cfg);
  KLTable table(group, ideal);
  const auto& el = table.ideal().elements();
  const char* first = inverse ? "x" : "y";
  std::string csv = std::string(first) + "_word,w_word,polynomial\n";
  ojson list = ojson::array();
  for (std::size_t w = 0; w < table.size(); ++w)
    for (std::size_t y = 0; y < table.size(); ++y) {
      if (!table.leq(y, w)) continue;
      const QPolynomial& p = inverse ? table.q(y, w) : table.p(y, w);
      csv += csv_escape(el[y].word_string()) + "," + csv_escape(el[w].word_string()) + "," + p.to_string() + "\n";
      list.push_back({{first, el[y].word_string()}, {"w", el[w].word_string()}, {"coeffs", coeffs_json(p)},
                      {"polynomial", p.to_string()}});
    }
  if (cfg.format == "csv") return csv;
  ojson j;
  j[inverse ? "inverse_kl" : "kl"] = list;
  return j.dump(2) + "\n";
}

std::string cmd_moment_graph(const WeylGroup& group, const Config& cfg) {
  BruhatIdeal ideal = make_ideal(group, cfg);
  MomentGraph g = build_moment_graph(group, ideal, cfg.dual);
  const auto& el = g.vertices().elements();
  if (cfg.format == "csv") {
    std::string out = "lower,upper,label\n";
    for (const auto& e : g.edges())
      out += csv_escape(el[e.lower].word_string()) + "," + csv_escape(el[e.upper].word_string()) + "," +
             csv_escape(e.label.to_string()) + "\n";
    return out;
  }
  ojson j;
  j["dual"] = g.is_dual();
  ojson verts = ojson::array();
  for (const auto& w : el) verts.push_back(w.word_string());
  j["vertices"] = verts;
  ojson edges = ojson::array();
  for (const auto& e : g.edges())
    edges.push_back({{"lower", el[e.lower].word_string()}, {"upper", el[e.upper].word_string()}, {"label", e.label.coords}});
  j["edges"] = edges;
  ojson covers = ojson::array();
  for (const auto& [a, b] : g.covers()) covers.push_back({el[a].word_string(), el[b].word_string()});
  j["covers"] = covers;
  return j.dump(2) + "\n";
}

ojson report_json(const VerifyReport& r) {
  ojson entries = ojson::array();
  for (const auto& e : r.entries)
    entries.push_back({{"w", e.w.word_string()},
                       {"stalk", e.stalk.to_string()},
                       {"inverse_kl", e.inverse_kl.to_string()},
                       {"pass", e.pass}});
  return {{"base", r.base.word_string()}, {"all_pass", r.all_pass()}, {"entries", entries}};
}

std::string cmd_bmp(const WeylGroup& group, const Config& cfg, int& status) {
  BruhatIdeal ideal = make_ideal(group, cfg);
  MomentGraph g = build_moment_graph(group, ideal, cfg.dual);
  WeylElement x = group.parse(cfg.base);
  BMPOptions opt;
  opt.degree_cap = cfg.degree_cap;
  BMPSheaf sheaf = compute_bmp(g, x, opt);
  ojson stalks;
  for (std::size_t v = 0; v < g.size(); ++v) stalks[g.vertices().elements()[v].word_string()] = sheaf.stalk(v);
  if (!cfg.verify) return stalks.dump(2) + "\n";
  KLTable table(group, ideal);
  VerifyReport r = verify_against_inverse_kl(g, x, table, opt);
  if (!r.all_pass()) status = kVerification;
  ojson j;
  j["stalks"] = stalks;
  j["report"] = report_json(r);
  return j.dump(2) + "\n";
}

std::string cmd_verify_kl(const WeylGroup& group, const Config& cfg, int& status) {
  BruhatIdeal ideal = make_ideal(group, cfg);
  MomentGraph g = build_moment_graph(group, ideal, cfg.dual);
  KLTable table(group, ideal);
  std::vector<WeylElement> bases;
  if (cfg.base.empty()) bases = ideal.elements();
  else bases.push_back(group.parse(cfg.base));
  BMPOptions opt;
  opt.degree_cap = cfg.degree_cap;
  auto reports = parallel_map<VerifyReport>(bases.size(), cfg.threads, [&](std::size_t i) {
    return verify_against_inverse_kl(g, bases[i], table, opt);
  });
  bool all = true;
  std::size_t pairs = 0;
  ojson list = ojson::array();
  for (const auto& r : reports) {
    all = all && r.all_pass();
    pairs += r.entries.size();
    list.push_back(report_json(r));
  }
  if (!all) status = kVerification;
  ojson j;
  j["all_pass"] = all;
  j["pairs"] = pairs;
  j["bases"] = list;
  return j.dump(2) + "\n";
}

std::string cmd_characters(const WeylGroup& group, const Config& cfg) {
  WeylElement w = group.parse(cfg.element);
  BruhatIdeal ideal = group.ideal_from_generators({w}, size_limit());
  BlockSpec block = classify_weight(group, parse_pairings(cfg.pairings, group.rank()), ideal);
  KLTable table(group, ideal);
  CharacterSeries ch = irreducible_character(group, block, w, cfg.depth, table);
  // by depth below the top, then coordinates
  std::vector<std::pair<RootVector, int64_t>> terms(ch.coeffs.begin(), ch.coeffs.end());
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto& a, const auto& b) { return a.first.height() > b.first.height(); });
  if (cfg.format == "csv") {
    std::string out = "offset,coefficient\n";
    for (const auto& [off, c] : terms) out += csv_escape(off.to_string()) + "," + std::to_string(c) + "\n";
    return out;
  }
  ojson j = ojson::object();
  for (const auto& [off, c] : terms) j[off.to_string()] = c;
  return j.dump(2) + "\n";
}

std::string cmd_multiplicities(const WeylGroup& group, const Config& cfg) {
  BruhatIdeal ideal = make_ideal(group, cfg);
  std::vector<Rational> p(group.rank(), Rational(-2));
  if (!cfg.pairings.empty()) p = parse_pairings(cfg.pairings, group.rank());
  BlockSpec block = classify_weight(group, p, ideal);
  if (!(block.integral && block.regular && block.antidominant && block.noncritical))
    throw Error(ErrorCode::PredicateViolation, "block must be integral, regular, antidominant and noncritical");
  MomentGraph dual = build_moment_graph(group, ideal, true);
  KLTable table(group, ideal);
  const auto& el = ideal.elements();
  auto rows = parallel_map<std::vector<MultiplicityRow>>(el.size(), cfg.threads, [&](std::size_t i) {
    BMPSheaf sheaf = compute_bmp(dual, el[i]);
    std::vector<MultiplicityRow> out;
    for (const auto& x : el)
      out.push_back({el[i], x, projective_verma_multiplicity(block, sheaf, x, table), jh_multiplicity(block, x, el[i], table)});
    return out;
  });
  if (cfg.format == "json") {
    ojson list = ojson::array();
    for (const auto& group_rows : rows)
      for (const auto& r : group_rows)
        list.push_back({{"w", r.w.word_string()}, {"x", r.x.word_string()}, {"proj", r.projective}, {"jh", r.jh}});
    return ojson{{"multiplicities", list}}.dump(2) + "\n";
  }
  std::string out = "w,x,proj,jh\n";
  for (const auto& group_rows : rows)
    for (const auto& r : group_rows)
      out += csv_escape(r.w.word_string()) + "," + csv_escape(r.x.word_string()) + "," + std::to_string(r.projective) +
             "," + std::to_string(r.jh) + "\n";
  return out;
}

std::string cmd_strata(const WeylGroup& group, const Config& cfg) {
  BruhatIdeal ideal = make_ideal(group, cfg);
  auto comp = group.sj_complement(ideal);
  if (cfg.format == "csv") {
    std::string out = "word,length,dimension\n";
    for (const auto& x : ideal.elements())
      out += csv_escape(x.word_string()) + "," + std::to_string(x.length()) + "," +
             std::to_string(group.stratum_dimension(x, ideal)) + "\n";
    return out;
  }
  ojson j;
  ojson roots = ojson::array();
  for (const auto& r : comp) roots.push_back(r.coords);
  j["complement_size"] = comp.size();
  j["complement"] = roots;
  ojson strata = ojson::array();
  for (const auto& x : ideal.elements())
    strata.push_back({{"word", x.word_string()}, {"length", x.length()}, {"dimension", group.stratum_dimension(x, ideal)}});
  j["strata"] = strata;
  return j.dump(2) + "\n";
}

}  // namespace

Result run(const std::vector<std::string>& args) {
  CLI::App app{"Kac-Moody flag combinatorics: Weyl groups, KL polynomials, moment graphs and BMP sheaves", "kmflag"};
  app.require_subcommand(1, 1);
  Config cfg;

  auto add_cartan = [&](CLI::App* sub) {
    sub->add_option("--cartan", cfg.cartan_path, "JSON file {\"cartan\": [[...]]}")->required()->check(CLI::ExistingFile);
  };
  auto add_ideal = [&](CLI::App* sub) {
    auto* ml = sub->add_option("--max-length,--ideal-max-length", cfg.max_length, "ideal of elements of length <= n")
                   ->check(CLI::NonNegativeNumber);
    auto* gen = sub->add_option("--generators", cfg.generators, "ideal generated by words, separated by ';'");
    ml->excludes(gen);
  };
  // the subcommands share cfg.format, so defaults are applied after parsing
  std::map<const CLI::App*, std::string> format_default;
  auto add_format = [&](CLI::App* sub, const std::string& def) {
    sub->add_option("--format", cfg.format, "output format (default " + def + ")")
        ->check(CLI::IsMember({"json", "csv"}));
    format_default[sub] = def;
  };
  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber)->default_val(1);
  };
  auto add_cap = [&](CLI::App* sub) {
    sub->add_option("--degree-cap", cfg.degree_cap, "degree cap for the sheaf computation")->check(CLI::NonNegativeNumber);
  };

  auto* roots = app.add_subcommand("roots", "positive real roots up to a height");
  add_cartan(roots);
  roots->add_option("--depth", cfg.depth, "maximal height")->check(CLI::NonNegativeNumber)->default_val(10);
  add_format(roots, "json");

  auto* ideal = app.add_subcommand("weyl-ideal", "elements of a finite Bruhat ideal");
  add_cartan(ideal);
  add_ideal(ideal);
  add_format(ideal, "json");

  auto* kl = app.add_subcommand("kl", "Kazhdan-Lusztig polynomials P_{y,w}");
  add_cartan(kl);
  add_ideal(kl);
  add_format(kl, "json");

  auto* ikl = app.add_subcommand("inverse-kl", "inverse Kazhdan-Lusztig polynomials Q_{x,w}");
  add_cartan(ikl);
  add_ideal(ikl);
  add_format(ikl, "json");

  auto* mg = app.add_subcommand("moment-graph", "moment graph of an ideal");
  add_cartan(mg);
  add_ideal(mg);
  mg->add_flag("--dual", cfg.dual, "label edges by coroots of the dual datum");
  add_format(mg, "json");

  auto* bmp = app.add_subcommand("bmp", "stalks of the canonical sheaf B(x)");
  add_cartan(bmp);
  add_ideal(bmp);
  bmp->add_option("--base", cfg.base, "base vertex x")->required();
  bmp->add_flag("--dual", cfg.dual, "use the dual moment graph");
  bmp->add_flag("--verify", cfg.verify, "compare stalks with inverse KL polynomials");
  add_cap(bmp);

  auto* vkl = app.add_subcommand("verify-kl", "compare BMP stalks with inverse KL polynomials");
  add_cartan(vkl);
  add_ideal(vkl);
  vkl->add_option("--base", cfg.base, "single base vertex (default: every vertex)");
  vkl->add_flag("--dual", cfg.dual, "use the dual moment graph");
  add_cap(vkl);
  add_threads(vkl);

  auto* chars = app.add_subcommand("characters", "character of L(w.lambda)");
  add_cartan(chars);
  chars->add_option("--pairings", cfg.pairings, "<lambda, alpha_i^vee>, comma separated")->required();
  chars->add_option("--element", cfg.element, "w")->required();
  chars->add_option("--depth", cfg.depth, "truncation height")->check(CLI::NonNegativeNumber)->default_val(10);
  add_format(chars, "json");

  auto* mult = app.add_subcommand("multiplicities", "Verma multiplicities of projectives and Jordan-Holder multiplicities");
  add_cartan(mult);
  add_ideal(mult);
  mult->add_option("--pairings", cfg.pairings, "<lambda, alpha_i^vee> (default all -2)");
  add_format(mult, "csv");
  add_threads(mult);

  auto* strata = app.add_subcommand("strata", "stratum dimensions of an ideal");
  add_cartan(strata);
  add_ideal(strata);
  add_format(strata, "json");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    return {kOk, app.help()};
  } catch (const CLI::CallForAllHelp&) {
    return {kOk, app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    return {kValidation, error_document("BadInput", e.what())};
  }

  Result res;
  try {
    WeylGroup group(load_cartan_file(cfg.cartan_path));
    int status = kOk;
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (cfg.format.empty()) cfg.format = format_default.count(sub) ? format_default.at(sub) : "json";
    if (name == "roots") res.output = cmd_roots(group, cfg);
    else if (name == "weyl-ideal") res.output = cmd_weyl_ideal(group, cfg);
    else if (name == "kl") res.output = cmd_kl(group, cfg, false);
    else if (name == "inverse-kl") res.output = cmd_kl(group, cfg, true);
    else if (name == "moment-graph") res.output = cmd_moment_graph(group, cfg);
    else if (name == "bmp") res.output = cmd_bmp(group, cfg, status);
    else if (name == "verify-kl") res.output = cmd_verify_kl(group, cfg, status);
    else if (name == "characters") res.output = cmd_characters(group, cfg);
    else if (name == "multiplicities") res.output = cmd_multiplicities(group, cfg);
    else if (name == "strata") res.output = cmd_strata(group, cfg);
    res.exit_code = status;
  } catch (const Error& e) {
    res.exit_code = status_for(e.code());
    res.output = error_document(code_name(e.code()), e.what());
  } catch (const std::exception& e) {
    res.exit_code = kVerification;
    res.output = error_document("InternalError", e.what());
  }
  return res;
}

}  // namespace kmflag::cli

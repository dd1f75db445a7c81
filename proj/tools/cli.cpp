#include "cli.hpp"

#include "sadic/balance.hpp"
#include "sadic/errors.hpp"
#include "sadic/families.hpp"
#include "sadic/language.hpp"
#include "sadic/linalg.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#ifndef SADIC_VERSION
#define SADIC_VERSION "0.0.0"
#endif

namespace sadic::cli {

using nlohmann::json;

std::string fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

enum Exit { kOk = 0, kNegative = 1, kInput = 2, kInconclusive = 3 };

struct Options {
  std::string ds;
  std::size_t max_len = 0;
  std::size_t depth = 0;
  std::string eps = "1e-8";
  std::string bound;
  bool compact = false;
  bool pretty = false;
  std::string exact_field;
  std::string factors;
  std::string word;
  std::string name;
  std::string a;
  std::size_t horizon = 40;
  std::size_t letters = 0;
  std::string out;
  std::string left;
  std::string right;
  std::string exportfile;
  std::string element;
  std::string target;
};

/// Report under construction; inputs are recorded as they are resolved.
struct Report {
  json body = json::object();
  json inputs = json::object();
  int code = kOk;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const std::string& path) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::optional<DirectiveSequence> builtin_sequence(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const auto names = family_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) return std::nullopt;
  FamilySpec f;
  f.name = name;
  if (colon != std::string::npos) f.word = spec.substr(colon + 1);
  return make(f);
}

/// --ds value: a family name (optionally "brun:12,23,31" style) or a directive JSON file.
DirectiveSequence load_sequence(const std::string& spec, const std::string& flag, Report& r) {
  if (spec.empty()) throw InputError("--" + flag + " is required");
  if (auto ds = builtin_sequence(spec)) {
    r.inputs[flag] = {{"source", spec}, {"kind", "builtin"}, {"fnv1a64", fnv1a64(to_json(*ds).dump())}};
    return *ds;
  }
  const std::string text = read_file(spec);
  r.inputs[flag] = {{"source", spec}, {"kind", "file"}, {"fnv1a64", fnv1a64(text)}};
  return directive_from_json(parse_json(text, spec));
}

void require_field(const DimensionGroupDescriptor& D, const std::string& field) {
  if (field.empty()) return;
  if (field != "sqrt5") throw InputError("--exact-field supports only sqrt5");
  for (const auto& m : D.measures) {
    if (!m.exact) throw InputError("measures are not known exactly; --exact-field sqrt5 cannot be honored");
    for (const auto& x : *m.exact)
      if (x.radicand() != 0 && x.radicand() != 5) throw InputError("a measure lies outside Q(sqrt5)");
  }
}

/// A built-in descriptor, a family name, a descriptor JSON file or a directive JSON file.
DimensionGroupDescriptor load_descriptor(const std::string& spec, const std::string& flag, Report& r) {
  if (spec.empty()) throw InputError("--" + flag + " is required");
  if (auto D = builtin_descriptor(spec)) {
    r.inputs[flag] = {{"source", spec}, {"kind", "builtin-descriptor"}, {"fnv1a64", fnv1a64(to_json(*D).dump())}};
    return *D;
  }
  if (auto ds = builtin_sequence(spec)) {
    r.inputs[flag] = {{"source", spec}, {"kind", "builtin"}, {"fnv1a64", fnv1a64(to_json(*ds).dump())}};
    return descriptor(*ds);
  }
  const std::string text = read_file(spec);
  r.inputs[flag] = {{"source", spec}, {"kind", "file"}, {"fnv1a64", fnv1a64(text)}};
  const json j = parse_json(text, spec);
  if (j.contains("measures")) return descriptor_from_json(j);
  return descriptor(directive_from_json(j));
}

std::vector<Word> parse_word_list(const Alphabet& alphabet, const std::string& list) {
  std::vector<Word> out;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(alphabet.parse(item));
  return out;
}

json letters_json(const Alphabet& alphabet, const std::vector<Letter>& ls) {
  json arr = json::array();
  for (auto l : ls) arr.push_back(alphabet.symbol(l));
  return arr;
}

json graph_json(const Alphabet& alphabet, const ExtensionGraph& g) {
  json edges = json::array();
  for (const auto& [a, b] : g.edges) edges.push_back({alphabet.symbol(a), alphabet.symbol(b)});
  return {{"word", alphabet.render(g.word)},
          {"left", letters_json(alphabet, g.left)},
          {"right", letters_json(alphabet, g.right)},
          {"edges", edges},
          {"tree", g.is_tree()}};
}

json dendric_json(const Alphabet& alphabet, const DendricReport& d) {
  json j = {{"dendric", d.dendric}, {"up_to", d.up_to}, {"bispecial_checked", d.bispecial_checked}};
  j["witness"] = d.witness ? graph_json(alphabet, *d.witness) : json(nullptr);
  return j;
}

json assertion(const std::string& name, bool holds, json detail = nullptr) {
  json j = {{"assertion", name}, {"holds", holds}};
  if (!detail.is_null()) j["detail"] = std::move(detail);
  return j;
}

int from_assertions(const json& list) {
  for (const auto& a : list)
    if (!a.at("holds").get<bool>()) return kNegative;
  return kOk;
}

// ---- subcommands ----------------------------------------------------------

void cmd_family(const Options& o, Report& r) {
  FamilySpec f;
  f.name = o.name;
  f.word = o.word;
  f.letters = o.letters;
  if (!o.a.empty()) f.a = IntegerSequence::parse(o.a);
  f.horizon = o.horizon;
  const auto ds = make(f);
  const json seq = to_json(ds);
  r.body["sequence"] = seq;
  if (ds.is_generated()) r.body["sequence_note"] = "a_n = " + ds.generator()->a.to_string() + ", horizon " + std::to_string(ds.generator()->horizon);
  if (!o.out.empty()) {
    std::ofstream file(o.out, std::ios::binary);
    if (!file) throw InputError("cannot write '" + o.out + "'");
    file << seq.dump(2) << '\n';
    r.body["written"] = {{"path", o.out}, {"fnv1a64", fnv1a64(seq.dump(2) + "\n")}};
  }
}

void cmd_certify(const Options& o, Report& r) {
  const auto ds = load_sequence(o.ds, "ds", r);
  const auto c = certify(ds, o.depth ? o.depth : 20);
  r.body["certificate"] = to_json(c);
  switch (c.primitive.verdict) {
    case Verdict::yes: r.code = kOk; break;
    case Verdict::no: r.code = kNegative; break;
    case Verdict::inconclusive: r.code = kInconclusive; break;
  }
}

void cmd_language(const Options& o, Report& r) {
  const auto ds = load_sequence(o.ds, "ds", r);
  const std::size_t n = o.max_len ? o.max_len : 20;
  const auto lang = build_language(ds, n + 2);
  std::vector<std::size_t> p;
  for (std::size_t k = 0; k <= n; ++k) p.push_back(complexity(lang, k));
  r.body["complexity"] = p;
  r.body["generation_depth"] = lang.generation_depth();
  r.body["dendric"] = dendric_json(ds.alphabet(), is_dendric(lang, n));
  if (!o.exportfile.empty()) {
    std::ofstream file(o.exportfile, std::ios::binary);
    if (!file) throw InputError("cannot write '" + o.exportfile + "'");
    std::string text;
    for (std::size_t k = 1; k <= n; ++k)
      for (std::size_t i = 0; i < lang.count(k); ++i) text += ds.alphabet().render(lang.factor(k, i)) + "\n";
    file << text;
    r.body["exported"] = {{"path", o.exportfile}, {"fnv1a64", fnv1a64(text)}};
  }
}

void cmd_dendric(const Options& o, Report& r) {
  const auto ds = load_sequence(o.ds, "ds", r);
  const std::size_t n = o.max_len ? o.max_len : 20;
  const auto lang = build_language(ds, n + 2);
  const auto d = is_dendric(lang, n);
  r.body = dendric_json(ds.alphabet(), d);
  if (!o.word.empty()) {
    json graphs = json::array();
    std::stringstream ss(o.word);
    for (std::string item; std::getline(ss, item, ',');) {
      const Word w = item == "-" ? Word{} : ds.alphabet().parse(item);
      graphs.push_back(graph_json(ds.alphabet(), extension_graph(lang, w)));
    }
    r.body["graphs"] = graphs;
  }
  r.code = d.dendric ? kOk : kNegative;
}

void cmd_returns(const Options& o, Report& r) {
  const auto ds = load_sequence(o.ds, "ds", r);
  if (o.word.empty()) throw InputError("--word is required");
  const Word w = ds.alphabet().parse(o.word);
  const auto rw = return_words(ds, w);
  json words = json::array();
  for (const auto& x : rw.words) words.push_back(ds.alphabet().render(x));
  const auto fb = free_basis_check(rw.words, ds.dimension());
  r.body["word"] = o.word;
  r.body["return_words"] = words;
  r.body["count"] = rw.words.size();
  r.body["depth"] = rw.depth;
  r.body["completeness"] = "set unchanged over consecutive depths; sufficiency of this stopping rule is empirical";
  r.body["free_basis"] = {{"basis", fb.basis},
                          {"abelian_determinant", fb.abelian_determinant ? json(fb.abelian_determinant->str()) : json(nullptr)}};
  r.code = fb.basis ? kOk : kNegative;
}

void cmd_measures(const Options& o, Report& r) {
  const auto ds = load_sequence(o.ds, "ds", r);
  const auto probe = ergodicity_probe(ds, o.depth ? o.depth : 200, parse_rational(o.eps));
  r.body["probe"] = to_json(probe);
  r.code = probe.kind == ProbeKind::inconclusive ? kInconclusive : kOk;
}

void cmd_dimgroup(const Options& o, Report& r) {
  const auto D = load_descriptor(o.ds, "ds", r);
  require_field(D, o.exact_field);
  const Integer bound = o.bound.empty() ? Integer(1000000) : numerator(parse_rational(o.bound));
  const auto L = infinitesimal_lattice(D, bound);
  r.body["descriptor"] = to_json(D);
  r.body["infinitesimals"] = to_json(L);
  r.body["image_subgroup"] = to_json(image_subgroup_generators(D));
  if (!o.element.empty()) {
    IntegerVector x(static_cast<Eigen::Index>(std::count(o.element.begin(), o.element.end(), ',') + 1));
    std::stringstream ss(o.element);
    Eigen::Index i = 0;
    for (std::string item; std::getline(ss, item, ',');) x(i++) = numerator(parse_rational(item));
    r.body["cone"] = {{"element", o.element}, {"class", to_string(cone_membership(D, x))}};
  }
  r.code = L.status == LatticeStatus::inconclusive ? kInconclusive : kOk;
}

void cmd_soe(const Options& o, Report& r) {
  const auto L = load_descriptor(o.left, "left", r);
  const auto R = load_descriptor(o.right, "right", r);
  require_field(L, o.exact_field);
  require_field(R, o.exact_field);
  const int bound = o.bound.empty() ? 2 : static_cast<int>(numerator(parse_rational(o.bound)).convert_to<long>());
  if (bound < 0 || bound > 10) throw InputError("--bound must lie in 0..10");
  const auto s = soe_test(L, R, bound);
  r.body["soe"] = to_json(s);
  if (s.matrix) {
    r.body["soe"]["verified"] = verify_soe_witness(L, R, *s.matrix);
    r.body["soe"]["determinant"] = bareiss_determinant(*s.matrix).str();
  }
  switch (s.verdict) {
    case SoeVerdict::witness: r.code = kOk; break;
    case SoeVerdict::not_soe: r.code = kNegative; break;
    case SoeVerdict::no_witness_within_bound: r.code = kInconclusive; break;
  }
}

int balance_code(const BalanceReport& b) {
  auto refuted = [](BalanceVerdict v) { return v != BalanceVerdict::empirically_balanced && v != BalanceVerdict::inconclusive; };
  if (refuted(b.letters_verdict) || refuted(b.factors_verdict)) return kNegative;
  if (b.letters_verdict == BalanceVerdict::empirically_balanced) return kOk;
  return kInconclusive;
}

void cmd_balance(const Options& o, Report& r) {
  BalanceProbes probes;
  probes.max_len = o.max_len ? o.max_len : 64;
  if (o.ds == "iet3") {
    const auto D = *builtin_descriptor("iet3");
    r.inputs["ds"] = {{"source", o.ds}, {"kind", "builtin-coding"}, {"fnv1a64", fnv1a64(to_json(D).dump())}};
    const LanguageTable lang(iet3_alphabet(), {iet3_coding(200000)}, probes.max_len);
    probes.factors = parse_word_list(lang.alphabet(), o.factors);
    const auto b = balance_dashboard(lang, D, probes, true);
    r.body["balance"] = to_json(b, lang.alphabet());
    r.body["balance"]["notes"].push_back("language read from the first 200000 letters of the coding of 0");
    r.code = balance_code(b);
    return;
  }
  const auto ds = load_sequence(o.ds, "ds", r);
  probes.factors = parse_word_list(ds.alphabet(), o.factors);
  const auto b = balance_dashboard(ds, probes);
  r.body["balance"] = to_json(b, ds.alphabet());
  r.code = balance_code(b);
}

// ---- reproductions --------------------------------------------------------

json reproduce_fig1() {
  const auto ds = fibonacci();
  const auto& ab = ds.alphabet();
  const auto lang = build_language(ds, 52);
  using Edges = std::vector<std::pair<Letter, Letter>>;
  auto edges = [&](std::initializer_list<const char*> pairs) {
    Edges e;
    for (const char* p : pairs) e.emplace_back(ab.index(std::string(1, p[0])), ab.index(std::string(1, p[1])));
    std::sort(e.begin(), e.end());
    return e;
  };
  const std::vector<std::pair<std::string, Edges>> expected = {
      {"", edges({"aa", "ab", "ba"})}, {"a", edges({"ab", "ba", "bb"})}, {"b", edges({"aa"})}};
  json list = json::array(), graphs = json::array();
  for (const auto& [w, e] : expected) {
    const auto g = extension_graph(lang, ab.parse(w));
    auto got = g.edges;
    std::sort(got.begin(), got.end());
    graphs.push_back(graph_json(ab, g));
    list.push_back(assertion("E(" + (w.empty() ? std::string("eps") : w) + ") edge set and tree", got == e && g.is_tree()));
  }
  const auto f = is_dendric(lang, 50);
  list.push_back(assertion("Fibonacci dendric up to length 50", f.dendric, dendric_json(ab, f)));
  const auto t = is_dendric(build_language(tribonacci(), 52), 50);
  list.push_back(assertion("Tribonacci dendric up to length 50", t.dendric, dendric_json(tribonacci().alphabet(), t)));
  return {{"graphs", graphs}, {"assertions", list}};
}

json reproduce_ex63() {
  const auto D = *builtin_descriptor("iet3");
  const auto& mu = *D.measures.front().exact;
  json list = json::array();
  list.push_back(assertion("mu[2] = mu[3] exactly", mu[1] == mu[2], {quadratic_json(mu[1]), quadratic_json(mu[2])}));
  const auto L = infinitesimal_lattice(D);
  bool relation = L.status == LatticeStatus::exact && L.rank() == 1;
  if (relation) {
    IntegerVector v = L.basis.col(0);
    if (v(1) < 0) v = -v;
    relation = v == (IntegerVector(3) << 0, 1, -1).finished();
  }
  list.push_back(assertion("infinitesimal lattice is spanned by (0,1,-1)", relation, to_json(L)));
  // Coding frequencies against the exact lengths.
  const Word w = iet3_coding(100000);
  std::array<std::size_t, 3> counts{};
  for (auto x : w) ++counts[x];
  bool inside = true;
  for (std::size_t i = 0; i < 3; ++i) {
    const Rational f(Integer(counts[i]), Integer(w.size()));
    const Interval m = mu[i].enclose(pow10(-20));
    inside = inside && abs(f - m.midpoint()) < Rational(1, 1000);
  }
  list.push_back(assertion("coding frequencies match the lengths", inside));
  const LanguageTable lang(iet3_alphabet(), {iet3_coding(200000)}, 64);
  const auto b = balance_dashboard(lang, D, {}, true);
  list.push_back(assertion("frequency rank 2", b.frequency_rank == std::optional<std::size_t>(2)));
  list.push_back(assertion("not balanced on letters",
                           b.letters_verdict == BalanceVerdict::not_balanced_rank || b.letters_verdict == BalanceVerdict::not_balanced_witness,
                           to_string(b.letters_verdict)));
  return {{"descriptor", to_json(D)}, {"assertions", list}};
}

json reproduce_ex64() {
  const auto T = descriptor(tribonacci());
  const auto E = *builtin_descriptor("iet64");
  json list = json::array();
  const auto s = soe_test(T, E, 3);
  bool identity = s.matrix && *s.matrix == IntegerMatrix::Identity(3, 3);
  list.push_back(assertion("identity witness between Tribonacci and the exchange", s.verdict == SoeVerdict::witness && identity, to_json(s)));
  bool exact = false;
  if (s.matrix) {
    const IntegerVector rows = s.matrix->rowwise().sum();
    exact = rows == IntegerVector::Ones(3) && abs(bareiss_determinant(*s.matrix)) == 1 && verify_soe_witness(T, E, *s.matrix);
  }
  list.push_back(assertion("M 1 = 1 and |det M| = 1", exact));
  const auto L = infinitesimal_lattice(T);
  list.push_back(assertion("Tribonacci has no infinitesimals", L.status == LatticeStatus::trivial || (L.status == LatticeStatus::exact && L.rank() == 0),
                           to_json(L)));
  const auto F = descriptor(fibonacci());
  list.push_back(assertion("d = 2 against d = 3 is not SOE", soe_test(F, T, 3).verdict == SoeVerdict::not_soe));
  return {{"assertions", list}};
}

json reproduce_ex65() {
  const auto ds = two_measure_family();
  const std::size_t N = 40;
  json list = json::array();
  // C_{-2}, C_{-1}, C_0 are the unit vectors e3, e2, e1.
  std::vector<IntegerVector> c;
  for (Eigen::Index i : {2, 1, 0}) c.push_back(IntegerVector::Unit(3, i));
  bool recurrence = true, coefficient = true;
  Rational inv_sum = 0;
  for (std::size_t n = 1; n <= N; ++n) {
    const IntegerVector cn = telescope_matrix(ds, 1, n + 1).col(0);
    const Integer a = ds.generator()->a.at(n);
    inv_sum += Rational(Integer(1), a);
    const std::size_t k = n + 2;
    recurrence = recurrence && cn == IntegerVector(a * c[k - 2] + c[k - 3]);
    c.push_back(cn);
    coefficient = coefficient && Rational(c[k - 3].sum(), cn.sum()) <= Rational(Integer(1), a);
  }
  list.push_back(assertion("C_n = a_n C_{n-2} + C_{n-3} for n <= 40", recurrence));
  list.push_back(assertion("c_n <= 1/a_n for n <= 40", coefficient));
  // Normalized columns J_n for n = -1 .. 40; parity classes stay apart.
  auto J = [&](std::size_t k) { return RationalVector(c[k].cast<Rational>() / Rational(c[k].sum())); };
  std::optional<Rational> gap;
  for (std::size_t k = 1; k < c.size(); ++k)
    for (std::size_t m = k + 1; m < c.size(); m += 2) {
      const Rational dist = l1_distance(J(k), J(m));
      if (!gap || dist < *gap) gap = dist;
    }
  const Rational lower = 2 - 2 * inv_sum;
  list.push_back(assertion("even and odd columns are L1-separated by 2 - 2 sum 1/a_k", *gap >= lower,
                           {{"gap", rational_json(*gap)}, {"bound", rational_json(lower)}}));
  list.push_back(assertion("the separation is at least 1", *gap >= 1));
  const auto probe = ergodicity_probe(ds, N, pow10(-8));
  list.push_back(assertion("probe reports two clusters", probe.kind == ProbeKind::multiple && probe.clusters.size() == 2, to_json(probe)));
  list.push_back(assertion("cluster gap is at least 1", probe.cluster_gap && *probe.cluster_gap >= 1));
  list.push_back(assertion("at most d - 1 clusters", probe.clusters.size() <= ds.dimension() - 1));
  return {{"a", ds.generator()->a.to_string()}, {"horizon", N}, {"assertions", list}};
}

json reproduce_sec5() {
  json list = json::array();
  const auto c = thue_morse_conjugate();
  BalanceProbes probes;
  probes.max_len = 512;
  const auto b = balance_dashboard(c, probes);
  bool witness = false;
  for (const auto& p : b.letters) witness = witness || (p.growth == Growth::growing && p.witness);
  list.push_back(assertion("Thue-Morse conjugate: a letter profile grows, with a witness pair",
                           b.letters_verdict == BalanceVerdict::not_balanced_witness && witness, to_json(b, c.alphabet())));
  const auto t = thue_morse();
  probes.factors = {t.alphabet().parse("aba")};
  const auto tb = balance_dashboard(t, probes);
  bool letters_bounded = std::all_of(tb.letters.begin(), tb.letters.end(), [](const auto& p) { return p.growth == Growth::bounded; });
  list.push_back(assertion("Thue-Morse: letter profiles bounded", letters_bounded));
  list.push_back(assertion("Thue-Morse: factor aba grows", tb.factors.front().growth == Growth::growing, to_json(tb, t.alphabet())));
  return {{"assertions", list}};
}

void cmd_reproduce(const std::string& target, Report& r) {
  static const std::map<std::string, std::function<json()>> table = {
      {"fig1", reproduce_fig1}, {"ex6.3", reproduce_ex63}, {"ex6.4", reproduce_ex64}, {"ex6.5", reproduce_ex65}, {"sec5", reproduce_sec5}};
  const auto it = table.find(target);
  if (it == table.end()) throw InputError("unknown reproduction '" + target + "' (fig1, ex6.3, ex6.4, ex6.5, sec5)");
  r.body = it->second();
  r.body["target"] = target;
  r.code = from_assertions(r.body.at("assertions"));
}

void check_threads() {
  const char* t = std::getenv("SADIC_THREADS");
  if (!t || !*t) return;
  char* end = nullptr;
  const long v = std::strtol(t, &end, 10);
  if (*end != '\0' || v < 1) throw InputError("SADIC_THREADS must be a positive integer");
}

std::string status_name(int code) {
  switch (code) {
    case kOk: return "ok";
    case kNegative: return "negative";
    case kInput: return "input_error";
    default: return "inconclusive";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  std::string target;
  CLI::App app{"sadic: certificates and invariants of S-adic subshifts", "sadic"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "sadic " SADIC_VERSION);

  auto output_flags = [&](CLI::App* s) {
    auto* j = s->add_flag("--json", o.compact, "compact JSON");
    auto* p = s->add_flag("--pretty", o.pretty, "indented JSON (default)");
    j->excludes(p);
  };
  auto ds_flag = [&](CLI::App* s, const char* help) { s->add_option("--ds", o.ds, help)->required(); };

  auto* family = app.add_subcommand("family", "emit a built-in directive sequence as JSON");
  family->add_option("--name", o.name, "fibonacci|tribonacci|thue_morse|thue_morse_conjugate|arnoux_rauzy|brun|sec65")->required();
  family->add_option("--word", o.word, "Arnoux-Rauzy letter period or Brun pair list");
  family->add_option("--letters", o.letters, "alphabet size for arnoux_rauzy / brun");
  family->add_option("--a", o.a, "sec65 sequence, geometric:BASE:SHIFT or list:v1,v2,...");
  family->add_option("--horizon", o.horizon, "sec65 horizon");
  family->add_option("--out", o.out, "write the sequence JSON to this file");
  output_flags(family);

  auto* certify_cmd = app.add_subcommand("certify", "primitivity, unimodularity and properness");
  ds_flag(certify_cmd, "FILE or built-in name");
  certify_cmd->add_option("--depth", o.depth, "growth probe depth");
  output_flags(certify_cmd);

  auto* language = app.add_subcommand("language", "factor complexity and dendric test");
  ds_flag(language, "FILE or built-in name");
  language->add_option("--max-len", o.max_len, "largest factor length");
  language->add_option("--export", o.exportfile, "write factors of length 1..max-len, one per line");
  output_flags(language);

  auto* dendric = app.add_subcommand("dendric", "extension graphs of bispecial factors");
  ds_flag(dendric, "FILE or built-in name");
  dendric->add_option("--max-len", o.max_len, "largest bispecial length");
  dendric->add_option("--word", o.word, "comma-separated factors whose graphs to print, - for the empty word");
  output_flags(dendric);

  auto* returns = app.add_subcommand("returns", "return words and the free-basis check");
  ds_flag(returns, "FILE or built-in name");
  returns->add_option("--word", o.word, "the factor")->required();
  output_flags(returns);

  auto* measures = app.add_subcommand("measures", "letter-measure cones and the ergodicity probe");
  ds_flag(measures, "FILE or built-in name");
  measures->add_option("--depth", o.depth, "maximal cone depth");
  measures->add_option("--eps", o.eps, "uniqueness threshold (rational)");
  output_flags(measures);

  auto* dimgroup = app.add_subcommand("dimgroup", "dimension-group descriptor, infinitesimals, image subgroup");
  ds_flag(dimgroup, "FILE (sequence or descriptor), family name, or iet3|iet64");
  dimgroup->add_option("--bound", o.bound, "coefficient bound for integer relations");
  dimgroup->add_option("--exact-field", o.exact_field, "require measures exact in this field (sqrt5)");
  dimgroup->add_option("--element", o.element, "classify x1,...,xd against the positive cone");
  output_flags(dimgroup);

  auto* soe = app.add_subcommand("soe", "unimodular row-stochastic matrix between two descriptors");
  soe->add_option("--left", o.left, "descriptor source")->required();
  soe->add_option("--right", o.right, "descriptor source")->required();
  soe->add_option("--bound", o.bound, "entry bound");
  soe->add_option("--exact-field", o.exact_field, "require measures exact in this field (sqrt5)");
  output_flags(soe);

  auto* balance = app.add_subcommand("balance", "discrepancy profiles and the balance dashboard");
  ds_flag(balance, "FILE, built-in name, or iet3");
  balance->add_option("--max-len", o.max_len, "largest window length");
  balance->add_option("--factors", o.factors, "comma-separated factors to profile");
  output_flags(balance);

  auto* reproduce = app.add_subcommand("reproduce", "fixed reproductions: fig1, ex6.3, ex6.4, ex6.5, sec5");
  reproduce->add_option("target", target, "reproduction name")->required();
  output_flags(reproduce);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << "sadic " SADIC_VERSION "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kInput;
  }

  CLI::App* sub = app.get_subcommands().front();
  Report r;
  std::string command = "sadic";
  for (const auto& a : args) command += " " + a;
  try {
    check_threads();
    const std::string name = sub->get_name();
    if (name == "family") cmd_family(o, r);
    else if (name == "certify") cmd_certify(o, r);
    else if (name == "language") cmd_language(o, r);
    else if (name == "dendric") cmd_dendric(o, r);
    else if (name == "returns") cmd_returns(o, r);
    else if (name == "measures") cmd_measures(o, r);
    else if (name == "dimgroup") cmd_dimgroup(o, r);
    else if (name == "soe") cmd_soe(o, r);
    else if (name == "balance") cmd_balance(o, r);
    else cmd_reproduce(target, r);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const PreconditionError& e) {
    err << "precondition not met: " << e.what() << "\n";
    return kInput;
  } catch (const RangeError& e) {
    err << "out of range: " << e.what() << "\n";
    return kInput;
  } catch (const InconclusiveError& e) {
    r.body = json::object();
    r.body["message"] = e.what();
    r.code = kInconclusive;
  }

  json report = r.body;
  report["command"] = command;
  report["inputs"] = r.inputs;
  report["version"] = "sadic " SADIC_VERSION;
  report["seed"] = "no random choices; output depends only on inputs and flags";
  report["status"] = status_name(r.code);
  out << (o.compact ? report.dump() : report.dump(2)) << "\n";
  return r.code;
}

}  // namespace sadic::cli

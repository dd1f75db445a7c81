#include "sadic/directive.hpp"

#include "sadic/errors.hpp"
#include "sadic/linalg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace sadic {

namespace {

using Pattern = std::vector<std::uint8_t>;  // row-major d x d zero pattern

Pattern pattern_of(const IntegerMatrix& m) {
  const auto d = static_cast<std::size_t>(m.rows());
  Pattern p(d * d, 0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) p[i * d + j] = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) != 0;
  return p;
}

Pattern pattern_product(const Pattern& a, const Pattern& b, std::size_t d) {
  Pattern out(d * d, 0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      if (!a[i * d + k]) continue;
      for (std::size_t j = 0; j < d; ++j) out[i * d + j] |= b[k * d + j];
    }
  return out;
}

bool all_set(const Pattern& p) {
  return std::all_of(p.begin(), p.end(), [](std::uint8_t x) { return x != 0; });
}

// f o g for letter maps.
std::vector<Letter> compose_maps(const std::vector<Letter>& f, const std::vector<Letter>& g) {
  std::vector<Letter> out(g.size());
  for (std::size_t a = 0; a < g.size(); ++a) out[a] = f[g[a]];
  return out;
}

bool is_constant(const std::vector<Letter>& f) {
  return std::all_of(f.begin(), f.end(), [&](Letter x) { return x == f.front(); });
}

// Search state for the right-extension of a window starting at n.
// Phase is only meaningful once N lies in the periodic tail.
template <class State, class Step, class Done>
struct WindowSearch {
  const DirectiveSequence& ds;
  std::size_t budget;

  // Returns the minimal window length, 0 when the state provably never reaches Done,
  // or nullopt when the budget ran out (or the horizon was reached for generators).
  std::optional<std::size_t> run(std::size_t n, State state, Step step, Done done) const {
    std::set<std::pair<State, std::size_t>> seen;
    const std::size_t fixed = ds.is_generated() ? 0 : ds.prefix().size();
    const std::size_t L = ds.tail_period();
    for (std::size_t N = n + 1;; ++N) {
      if (done(state)) return N - n;
      if (N - n > budget) return std::nullopt;
      if (auto h = ds.horizon(); h && N > *h) return std::nullopt;
      if (!ds.is_generated() && N > fixed) {
        if (!seen.emplace(state, (N - fixed - 1) % L).second) return 0;
      }
      state = step(state, N);
    }
  }
};

}  // namespace

// ---------------------------------------------------------------- IntegerSequence

Integer IntegerSequence::at(std::size_t n) const {
  if (n == 0) throw RangeError("integer sequences are indexed from 1");
  if (kind == "geometric") {
    const long e = static_cast<long>(n) + shift;
    if (e < 0) throw InputError("geometric sequence exponent is negative");
    return pow(base, static_cast<unsigned>(e));
  }
  if (kind == "list") {
    if (n > values.size()) throw RangeError("integer sequence has only " + std::to_string(values.size()) + " terms");
    return values[n - 1];
  }
  throw InputError("unknown integer sequence kind '" + kind + "'");
}

std::optional<std::size_t> IntegerSequence::length() const {
  if (kind == "list") return values.size();
  return std::nullopt;
}

IntegerSequence IntegerSequence::parse(std::string_view text) {
  IntegerSequence s;
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw InputError("integer sequence must look like geometric:BASE:SHIFT or list:v1,v2");
  s.kind = std::string(text.substr(0, colon));
  const std::string rest(text.substr(colon + 1));
  try {
    if (s.kind == "geometric") {
      const auto c2 = rest.find(':');
      if (c2 == std::string::npos) throw InputError("geometric sequence needs BASE:SHIFT");
      s.base = Integer(rest.substr(0, c2));
      s.shift = std::stol(rest.substr(c2 + 1));
    } else if (s.kind == "list") {
      std::stringstream ss(rest);
      std::string item;
      while (std::getline(ss, item, ',')) s.values.emplace_back(item);
      if (s.values.empty()) throw InputError("empty list sequence");
    } else {
      throw InputError("unknown integer sequence kind '" + s.kind + "'");
    }
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const InputError*>(&e)) throw;
    throw InputError(std::string("malformed integer sequence: ") + e.what());
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const InputError*>(&e)) throw;
    throw InputError(std::string("malformed integer sequence: ") + e.what());
  }
  return s;
}

std::string IntegerSequence::to_string() const {
  if (kind == "geometric") return "geometric:" + base.str() + ":" + std::to_string(shift);
  std::string out = "list:";
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + values[i].str();
  return out;
}

// ---------------------------------------------------------------- DirectiveSequence

DirectiveSequence::DirectiveSequence(Alphabet alphabet, std::vector<Morphism> prefix, std::vector<Morphism> period)
    : alphabet_(std::move(alphabet)), prefix_(std::move(prefix)), period_(std::move(period)) {
  if (period_.empty()) throw InputError("a directive sequence needs a non-empty period");
  for (const auto* list : {&prefix_, &period_})
    for (const auto& m : *list)
      if (!(m.source() == alphabet_) || !(m.target() == alphabet_))
        throw InputError("every morphism of a directive sequence must be an endomorphism of its alphabet");
}

DirectiveSequence DirectiveSequence::constant(const Morphism& m) {
  if (!m.is_endomorphism()) throw InputError("a constant directive sequence needs an endomorphism");
  return DirectiveSequence(m.source(), {}, {m});
}

DirectiveSequence DirectiveSequence::generated(Generator g) {
  if (g.name != "sec65") throw InputError("unknown generator '" + g.name + "'");
  if (g.horizon < 1) throw InputError("generator horizon must be positive");
  if (auto len = g.a.length(); len && *len < g.horizon) throw InputError("integer list shorter than the horizon");
  Rational reciprocal_sum = 0;
  Integer previous = 0;
  for (std::size_t n = 1; n <= g.horizon; ++n) {
    const Integer a = g.a.at(n);
    if (a <= previous) throw InputError("sec65 needs an increasing sequence of positive integers");
    reciprocal_sum += Rational(1) / Rational(a);
    previous = a;
  }
  if (g.a.kind == "geometric") {
    // Full series: sum_{n>=1} base^{-(n+shift)} = 1 / (base^shift (base - 1)).
    if (g.a.shift < 0) throw InputError("sec65 geometric shift must be non-negative");
    reciprocal_sum = Rational(1) / Rational(pow(g.a.base, static_cast<unsigned>(g.a.shift)) * (g.a.base - 1));
  }
  if (reciprocal_sum >= 1) throw InputError("sec65 needs sum 1/a_n < 1");
  DirectiveSequence ds;
  ds.alphabet_ = Alphabet::numbered(3);
  ds.generator_ = std::move(g);
  return ds;
}

std::optional<std::size_t> DirectiveSequence::horizon() const {
  if (generator_) return generator_->horizon;
  return std::nullopt;
}

void DirectiveSequence::check_index(std::size_t n) const {
  if (n == 0) throw RangeError("directive sequences are indexed from 1");
  if (generator_ && n > generator_->horizon)
    throw RangeError("index " + std::to_string(n) + " beyond the generator horizon " + std::to_string(generator_->horizon));
}

Morphism DirectiveSequence::at(std::size_t n) const {
  check_index(n);
  if (!generator_) {
    if (n <= prefix_.size()) return prefix_[n - 1];
    return period_[(n - prefix_.size() - 1) % period_.size()];
  }
  const Integer a = generator_->a.at(n);
  if (a > Integer(kMaxMaterializedImage)) throw RangeError("image of tau_" + std::to_string(n) + " is too long to materialize");
  const auto k = static_cast<std::size_t>(a.convert_to<unsigned long long>());
  Word one;
  if (n % 2 == 1) {
    one.push_back(2);
    one.insert(one.end(), k, 1);
  } else {
    one.insert(one.end(), k, 1);
    one.push_back(2);
  }
  return Morphism(alphabet_, alphabet_, {one, {0}, {1}});
}

IntegerMatrix DirectiveSequence::matrix_at(std::size_t n) const {
  check_index(n);
  if (!generator_) return incidence_matrix(at(n));
  IntegerMatrix m = IntegerMatrix::Zero(3, 3);
  m(0, 1) = 1;
  m(1, 0) = generator_->a.at(n);
  m(1, 2) = 1;
  m(2, 0) = 1;
  return m;
}

std::vector<Letter> DirectiveSequence::first_letters_at(std::size_t n) const {
  check_index(n);
  if (generator_) return {static_cast<Letter>(n % 2 == 1 ? 2 : 1), 0, 1};
  const auto m = at(n);
  std::vector<Letter> out;
  for (const auto& img : m.images()) out.push_back(img.front());
  return out;
}

std::vector<Letter> DirectiveSequence::last_letters_at(std::size_t n) const {
  check_index(n);
  if (generator_) return {static_cast<Letter>(n % 2 == 1 ? 1 : 2), 0, 1};
  const auto m = at(n);
  std::vector<Letter> out;
  for (const auto& img : m.images()) out.push_back(img.back());
  return out;
}

std::size_t DirectiveSequence::distinct_positions() const {
  if (generator_) return generator_->horizon;
  return prefix_.size() + period_.size();
}

std::size_t DirectiveSequence::tail_period() const { return generator_ ? 1 : period_.size(); }

// ---------------------------------------------------------------- telescoping

Morphism telescope(const DirectiveSequence& ds, std::size_t n, std::size_t N) {
  if (n < 1 || n >= N) throw InputError("telescope needs 1 <= n < N");
  Morphism out = ds.at(N - 1);
  for (std::size_t k = N - 1; k-- > n;) out = compose(ds.at(k), out);
  return out;
}

IntegerMatrix telescope_matrix(const DirectiveSequence& ds, std::size_t n, std::size_t N) {
  if (n < 1 || n >= N) throw InputError("telescope needs 1 <= n < N");
  IntegerMatrix out = ds.matrix_at(n);
  for (std::size_t k = n + 1; k < N; ++k) out = out * ds.matrix_at(k);
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

// ---------------------------------------------------------------- certify

SequenceCertificate certify(const DirectiveSequence& ds, std::size_t probe_depth) {
  if (probe_depth < 1) throw InputError("certify needs probe_depth >= 1");
  const std::size_t d = ds.dimension();
  const std::size_t K = ds.distinct_positions();
  const std::size_t L = ds.tail_period();
  const std::size_t cap = 8 * d * d;
  // Cycle detection decides every periodic case; the budget only guards against huge
  // pattern orbits.
  const std::size_t budget = std::max(cap, ds.is_generated() ? K : ds.prefix().size() + 2 * L) * 64;

  SequenceCertificate cert;
  cert.probe_depth = probe_depth;

  std::vector<Pattern> patterns(K + 1);
  for (std::size_t n = 1; n <= K; ++n) patterns[n] = pattern_of(ds.matrix_at(n));
  auto pattern_at = [&](std::size_t n) -> const Pattern& {
    if (n <= K) return patterns[n];
    return patterns[ds.prefix().size() + 1 + (n - ds.prefix().size() - 1) % L];
  };

  // Primitivity.
  {
    using Step = std::function<Pattern(const Pattern&, std::size_t)>;
    WindowSearch<Pattern, Step, std::function<bool(const Pattern&)>> search{ds, budget};
    auto& pc = cert.primitive;
    pc.verdict = Verdict::yes;
    const std::size_t horizon = ds.horizon().value_or(0);
    for (std::size_t n = 1; n <= K; ++n) {
      auto w = search.run(
          n, pattern_at(n), [&](const Pattern& p, std::size_t N) { return pattern_product(p, pattern_at(N), d); }, all_set);
      if (w && *w == 0) {
        pc.verdict = Verdict::no;
        pc.obstruction = "M_[" + std::to_string(n) + ",N) has a zero entry for every N";
        pc.witness.reset();
        break;
      }
      if (!w) {
        if (ds.is_generated() && 2 * n > horizon) {
          cert.truncated = true;
          continue;
        }
        pc.verdict = Verdict::inconclusive;
        pc.obstruction = "no positive window from n = " + std::to_string(n) + " within the search budget";
        continue;
      }
      if (*w > pc.window || !pc.witness) {
        pc.window = std::max(pc.window, *w);
        pc.witness = std::make_pair(n, n + *w);
      }
    }
    if (pc.verdict == Verdict::yes && pc.window > cap) pc.obstruction = "window exceeds 8 d^2";
  }

  // Unimodularity and per-level properness.
  cert.unimodular = true;
  cert.left_proper = cert.right_proper = true;
  for (std::size_t n = 1; n <= K; ++n) {
    if (abs(bareiss_determinant(ds.matrix_at(n))) != 1) cert.unimodular = false;
    const auto f = ds.first_letters_at(n);
    const auto l = ds.last_letters_at(n);
    Properness p;
    if (is_constant(f)) p.left = f.front();
    if (is_constant(l)) p.right = l.front();
    cert.left_proper = cert.left_proper && p.left.has_value();
    cert.right_proper = cert.right_proper && p.right.has_value();
    cert.levels.push_back(p);
  }

  // Proper window: first/last letter maps of tau_{[n,N)} become constant.
  {
    using State = std::pair<std::vector<Letter>, std::vector<Letter>>;
    using Step = std::function<State(const State&, std::size_t)>;
    WindowSearch<State, Step, std::function<bool(const State&)>> search{ds, budget};
    std::size_t worst = 0;
    bool ok = true;
    for (std::size_t n = 1; n <= K && ok; ++n) {
      auto w = search.run(
          n, State{ds.first_letters_at(n), ds.last_letters_at(n)},
          [&](const State& s, std::size_t N) {
            return State{compose_maps(s.first, ds.first_letters_at(N)), compose_maps(s.second, ds.last_letters_at(N))};
          },
          [](const State& s) { return is_constant(s.first) && is_constant(s.second); });
      if (!w || *w == 0) {
        if (!w && ds.is_generated() && 2 * n > K) continue;
        ok = false;
        break;
      }
      worst = std::max(worst, *w);
    }
    if (ok) cert.proper_window = worst;
  }

  // Growth of tau_{[1, probe_depth]}.
  std::size_t depth = probe_depth;
  if (auto h = ds.horizon(); h && depth > *h) {
    depth = *h;
    cert.truncated = true;
  }
  const IntegerMatrix product = telescope_matrix(ds, 1, depth + 1);
  for (Eigen::Index a = 0; a < product.cols(); ++a) {
    const Integer len = product.col(a).sum();
    if (a == 0 || len < cert.growth_min) cert.growth_min = len;
    if (a == 0 || len > cert.growth_max) cert.growth_max = len;
  }
  if (ds.is_generated()) cert.valid_up_to = ds.horizon();
  return cert;
}

// ---------------------------------------------------------------- properize

DirectiveSequence properize(const DirectiveSequence& ds) {
  if (ds.is_generated()) throw PreconditionError("properize needs an eventually periodic sequence");
  const std::size_t P = ds.prefix().size();
  const std::size_t L = ds.period().size();
  for (std::size_t n = 1; n <= P + L; ++n)
    if (!properness(ds.at(n)).left)
      throw PreconditionError("properize: tau_" + std::to_string(n) + " is not left proper");
  if (certify(ds, 1).primitive.verdict != Verdict::yes) throw PreconditionError("properize: sequence is not primitive");

  const std::size_t new_prefix = P + P % 2;
  const std::size_t new_period = L % 2 ? 2 * L : L;
  auto pair = [&](std::size_t first) { return compose(ds.at(first), right_proper_conjugate(ds.at(first + 1))); };
  std::vector<Morphism> prefix, period;
  for (std::size_t n = 1; n < new_prefix; n += 2) prefix.push_back(pair(n));
  for (std::size_t n = new_prefix + 1; n < new_prefix + new_period; n += 2) period.push_back(pair(n));
  return DirectiveSequence(ds.alphabet(), std::move(prefix), std::move(period));
}

// ---------------------------------------------------------------- JSON

nlohmann::json to_json(const SequenceCertificate& c) {
  nlohmann::json j;
  j["primitive"] = {{"verdict", to_string(c.primitive.verdict)}, {"window", c.primitive.window}};
  if (c.primitive.witness)
    j["primitive"]["witness"] = {c.primitive.witness->first, c.primitive.witness->second};
  if (!c.primitive.obstruction.empty()) j["primitive"]["obstruction"] = c.primitive.obstruction;
  j["unimodular"] = c.unimodular;
  j["left_proper"] = c.left_proper;
  j["right_proper"] = c.right_proper;
  j["proper"] = c.proper();
  j["proper_window"] = c.proper_window ? nlohmann::json(*c.proper_window) : nlohmann::json(nullptr);
  j["growth"] = {{"depth", c.probe_depth}, {"min", c.growth_min.str()}, {"max", c.growth_max.str()}};
  j["valid_up_to"] = c.valid_up_to ? nlohmann::json(*c.valid_up_to) : nlohmann::json(nullptr);
  j["truncated"] = c.truncated;
  return j;
}

nlohmann::json to_json(const DirectiveSequence& ds) {
  nlohmann::json j;
  j["alphabet"] = ds.alphabet().symbols();
  auto list = [](const std::vector<Morphism>& ms) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& m : ms) arr.push_back(to_json(m));
    return arr;
  };
  j["prefix"] = list(ds.prefix());
  j["period"] = list(ds.period());
  if (const auto& g = ds.generator()) {
    nlohmann::json a;
    a["kind"] = g->a.kind;
    if (g->a.kind == "geometric") {
      a["base"] = g->a.base.convert_to<long long>();
      a["shift"] = g->a.shift;
    } else {
      a["values"] = nlohmann::json::array();
      for (const auto& v : g->a.values) a["values"].push_back(v.str());
    }
    j["generator"] = {{"name", g->name}, {"a", a}, {"horizon", g->horizon}};
  }
  return j;
}

DirectiveSequence directive_from_json(const nlohmann::json& j) {
  try {
    if (j.contains("generator") && !j.at("generator").is_null()) {
      const auto& gj = j.at("generator");
      Generator g;
      g.name = gj.value("name", std::string("sec65"));
      g.horizon = gj.value("horizon", std::size_t{40});
      if (gj.contains("a")) {
        const auto& aj = gj.at("a");
        if (aj.is_string()) {
          g.a = IntegerSequence::parse(aj.get<std::string>());
        } else {
          g.a.kind = aj.value("kind", std::string("geometric"));
          if (g.a.kind == "geometric") {
            g.a.base = Integer(aj.value("base", 2LL));
            g.a.shift = aj.value("shift", 1L);
          } else {
            for (const auto& v : aj.at("values")) g.a.values.emplace_back(v.is_string() ? v.get<std::string>() : v.dump());
          }
        }
      }
      return DirectiveSequence::generated(std::move(g));
    }
    const Alphabet alphabet(j.at("alphabet").get<std::vector<std::string>>());
    auto list = [&](const char* key) {
      std::vector<Morphism> out;
      if (!j.contains(key)) return out;
      for (auto mj : j.at(key)) {
        if (!mj.contains("alphabet")) mj["alphabet"] = alphabet.symbols();
        out.push_back(morphism_from_json(mj));
      }
      return out;
    };
    return DirectiveSequence(alphabet, list("prefix"), list("period"));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed directive sequence JSON: ") + e.what());
  }
}

}  // namespace sadic

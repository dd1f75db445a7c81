#include "sadic/balance.hpp"

#include "sadic/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sadic {

std::string to_string(Growth g) {
  switch (g) {
    case Growth::bounded: return "bounded";
    case Growth::growing: return "growing";
    case Growth::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(BalanceVerdict v) {
  switch (v) {
    case BalanceVerdict::empirically_balanced: return "empirically_balanced";
    case BalanceVerdict::not_balanced_witness: return "not_balanced_witness";
    case BalanceVerdict::not_balanced_rank: return "not_balanced_rank";
    case BalanceVerdict::not_balanced_equivalence: return "not_balanced_equivalence";
    case BalanceVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

struct Extreme {
  std::size_t count;
  std::size_t text;
  std::size_t pos;
};

void classify(DiscrepancyProfile& p) {
  const std::size_t N = p.up_to();
  const auto lower = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(N))));
  bool flat = true;
  for (std::size_t n = std::max<std::size_t>(lower, 1); n <= N; ++n) flat = flat && p.profile[n] == p.profile[N];

  std::vector<std::size_t> samples;
  for (std::size_t n = 1; n <= N; n *= 2)
    if (n >= lower) samples.push_back(n);
  if (samples.empty() || samples.back() != N) samples.push_back(N);
  if (samples.size() >= 2) {
    double mx = 0, my = 0;
    for (auto n : samples) {
      mx += std::log2(static_cast<double>(n));
      my += static_cast<double>(p.profile[n]);
    }
    mx /= static_cast<double>(samples.size());
    my /= static_cast<double>(samples.size());
    double sxy = 0, sxx = 0;
    for (auto n : samples) {
      const double dx = std::log2(static_cast<double>(n)) - mx;
      sxy += dx * (static_cast<double>(p.profile[n]) - my);
      sxx += dx * dx;
    }
    p.slope = sxx > 0 ? sxy / sxx : 0;
  }
  if (flat) {
    p.growth = Growth::bounded;
    p.bound = p.profile[N];
  } else if (p.slope >= p.rule.slope_per_doubling && p.profile[N] >= p.rule.min_growth) {
    p.growth = Growth::growing;
  } else {
    p.growth = Growth::inconclusive;
  }
}

DiscrepancyProfile sweep(const LanguageTable& lang, const Word& v, std::size_t up_to, const GrowthRule& rule) {
  if (up_to == 0) throw InputError("discrepancy: up_to must be positive");
  if (up_to > lang.max_len()) throw RangeError("discrepancy: up_to exceeds the table's max_len");
  const auto& texts = lang.texts();
  // occ[t][i + 1] - occ[t][i] = 1 iff v occurs at position i of text t.
  std::vector<std::vector<std::size_t>> occ(texts.size());
  for (std::size_t t = 0; t < texts.size(); ++t) {
    const auto& text = texts[t];
    occ[t].assign(text.size() + 1, 0);
    for (std::size_t i = 0; i < text.size(); ++i) {
      const bool hit = i + v.size() <= text.size() && std::equal(v.begin(), v.end(), text.begin() + static_cast<std::ptrdiff_t>(i));
      occ[t][i + 1] = occ[t][i] + (hit ? 1 : 0);
    }
  }
  DiscrepancyProfile p;
  p.v = v;
  p.rule = rule;
  p.gap.assign(up_to + 1, 0);
  p.profile.assign(up_to + 1, 0);
  std::vector<std::pair<Extreme, Extreme>> extremes(up_to + 1);
  for (std::size_t n = 1; n <= up_to; ++n) {
    Extreme lo{std::numeric_limits<std::size_t>::max(), 0, 0}, hi{0, 0, 0};
    bool any = false;
    for (std::size_t t = 0; t < texts.size(); ++t) {
      if (texts[t].size() < n) continue;
      const auto& s = occ[t];
      for (std::size_t start = 0; start + n <= texts[t].size(); ++start) {
        const std::size_t c = n >= v.size() ? s[start + n - v.size() + 1] - s[start] : 0;
        if (c < lo.count) lo = {c, t, start};
        if (c > hi.count || !any) hi = {c, t, start};
        any = true;
      }
    }
    if (!any) throw RangeError("discrepancy: texts shorter than the requested length");
    p.gap[n] = hi.count - lo.count;
    p.profile[n] = std::max(p.profile[n - 1], p.gap[n]);
    extremes[n] = {lo, hi};
  }
  for (std::size_t n = 1; n <= up_to; ++n) {
    if (p.gap[n] != p.profile[up_to]) continue;
    const auto& [lo, hi] = extremes[n];
    auto word = [&](const Extreme& e) {
      const auto& t = texts[e.text];
      return Word(t.begin() + static_cast<std::ptrdiff_t>(e.pos), t.begin() + static_cast<std::ptrdiff_t>(e.pos + n));
    };
    p.witness = std::make_pair(word(hi), word(lo));
    break;
  }
  classify(p);
  return p;
}

}  // namespace

DiscrepancyProfile letter_discrepancy(const LanguageTable& lang, Letter v, std::size_t up_to, const GrowthRule& rule) {
  if (v >= lang.alphabet().size()) throw InputError("letter_discrepancy: letter outside the alphabet");
  return sweep(lang, Word{v}, up_to, rule);
}

DiscrepancyProfile factor_discrepancy(const LanguageTable& lang, const Word& v, std::size_t up_to, const GrowthRule& rule) {
  if (v.empty() || v.size() > lang.max_len() || !lang.contains(v))
    throw InputError("factor_discrepancy: '" + lang.alphabet().render(v) + "' is not in the language");
  return sweep(lang, v, up_to, rule);
}

namespace {

BirkhoffCheck birkhoff(const Word& text, Letter v, const Interval& mu, std::size_t bound) {
  BirkhoffCheck b;
  b.v = v;
  b.bound = bound;
  b.prefixes = std::min<std::size_t>(text.size(), 100000);
  Integer count = 0;
  for (std::size_t n = 1; n <= b.prefixes; ++n) {
    if (text[n - 1] == v) count += 1;
    const Rational c(count);
    const Rational a = abs(c - Rational(Integer(n)) * mu.lo), z = abs(c - Rational(Integer(n)) * mu.hi);
    b.max_centered = std::max({b.max_centered, a, z});
  }
  b.within = b.max_centered <= Rational(Integer(bound));
  return b;
}

bool refuted(BalanceVerdict v) {
  return v == BalanceVerdict::not_balanced_witness || v == BalanceVerdict::not_balanced_rank ||
         v == BalanceVerdict::not_balanced_equivalence;
}

}  // namespace

BalanceReport balance_dashboard(const LanguageTable& lang, const std::optional<DimensionGroupDescriptor>& measures,
                                const BalanceProbes& probes, bool class_certified) {
  BalanceReport r;
  r.d = lang.alphabet().size();
  r.class_certified = class_certified;
  const std::size_t up_to = std::min(probes.max_len, lang.max_len());
  for (std::size_t a = 0; a < r.d; ++a) r.letters.push_back(letter_discrepancy(lang, static_cast<Letter>(a), up_to, probes.rule));
  for (const auto& f : probes.factors) r.factors.push_back(factor_discrepancy(lang, f, up_to, probes.rule));

  bool rank_certified = false;
  if (measures) {
    if (measures->d != r.d) throw InputError("balance: measure dimension differs from the alphabet");
    const auto L = infinitesimal_lattice(*measures, probes.coefficient_bound);
    r.rank_method = to_string(L.status) + ": " + L.method;
    if (L.status != LatticeStatus::inconclusive) r.frequency_rank = r.d - L.rank();
    rank_certified = L.status == LatticeStatus::exact || L.status == LatticeStatus::trivial;
    if (L.status == LatticeStatus::candidate) r.notes.push_back("frequency relations are consistent with the enclosures but not proved");
  } else {
    r.notes.push_back("no letter measures supplied; frequency rank not computed");
  }

  const bool any_growing = std::any_of(r.letters.begin(), r.letters.end(), [](const auto& p) { return p.growth == Growth::growing; });
  const bool all_bounded = std::all_of(r.letters.begin(), r.letters.end(), [](const auto& p) { return p.growth == Growth::bounded; });
  const bool rank_deficient = rank_certified && r.frequency_rank && *r.frequency_rank < r.d;
  if (any_growing) {
    r.letters_verdict = BalanceVerdict::not_balanced_witness;
    if (rank_deficient) r.notes.push_back("rank deficiency of the letter frequencies independently refutes balance on letters");
  } else if (rank_deficient) {
    r.letters_verdict = BalanceVerdict::not_balanced_rank;
    if (all_bounded) r.notes.push_back("letter profiles look bounded up to the horizon, but dependent frequencies rule out balance");
  } else if (all_bounded) {
    r.letters_verdict = BalanceVerdict::empirically_balanced;
  }

  const bool factor_growing = std::any_of(r.factors.begin(), r.factors.end(), [](const auto& p) { return p.growth == Growth::growing; });
  const bool factors_bounded =
      !r.factors.empty() && std::all_of(r.factors.begin(), r.factors.end(), [](const auto& p) { return p.growth == Growth::bounded; });
  if (factor_growing) {
    r.factors_verdict = BalanceVerdict::not_balanced_witness;
  } else if (refuted(r.letters_verdict) && class_certified) {
    r.factors_verdict = BalanceVerdict::not_balanced_equivalence;
  } else if (factors_bounded && !refuted(r.letters_verdict)) {
    r.factors_verdict = BalanceVerdict::empirically_balanced;
  }

  if (measures && measures->measures.size() == 1 && !lang.texts().empty()) {
    const auto& mu = measures->measures.front();
    for (const auto& p : r.letters) {
      if (p.growth != Growth::bounded) continue;
      const Letter v = p.v.front();
      r.birkhoff.push_back(birkhoff(lang.texts().front(), v, mu.box[v], p.bound));
    }
  }
  return r;
}

BalanceReport balance_dashboard(const DirectiveSequence& ds, const BalanceProbes& probes) {
  const auto cert = certify(ds, 1);
  const bool class_certified = cert.primitive.verdict == Verdict::yes && cert.unimodular &&
                               (cert.left_proper || cert.right_proper || cert.proper_window.has_value());
  const auto lang = build_language(ds, probes.max_len);
  std::optional<DimensionGroupDescriptor> measures;
  std::string note;
  try {
    measures = measure_descriptor(ds, probes.measure);
  } catch (const InconclusiveError& e) {
    note = std::string("letter measures unavailable: ") + e.what();
  }
  auto r = balance_dashboard(lang, measures, probes, class_certified);
  if (!note.empty()) r.notes.push_back(note);
  if (!class_certified) r.notes.push_back("not certified primitive unimodular with proper windows; letter and factor balance are judged separately");
  return r;
}

nlohmann::json to_json(const DiscrepancyProfile& p, const Alphabet& alphabet) {
  nlohmann::json j;
  j["v"] = alphabet.render(p.v);
  j["up_to"] = p.up_to();
  j["profile"] = std::vector<std::size_t>(p.profile.begin() + 1, p.profile.end());
  j["growth"] = to_string(p.growth);
  if (p.growth == Growth::bounded) j["bound"] = p.bound;
  j["slope_per_doubling"] = std::round(p.slope * 1e6) / 1e6;
  j["rule"] = {{"slope_per_doubling", p.rule.slope_per_doubling}, {"min_growth", p.rule.min_growth}};
  if (p.witness) j["witness"] = {alphabet.render(p.witness->first), alphabet.render(p.witness->second)};
  return j;
}

nlohmann::json to_json(const BalanceReport& r, const Alphabet& alphabet) {
  nlohmann::json j;
  j["d"] = r.d;
  j["letters"] = nlohmann::json::array();
  for (const auto& p : r.letters) j["letters"].push_back(to_json(p, alphabet));
  j["factors"] = nlohmann::json::array();
  for (const auto& p : r.factors) j["factors"].push_back(to_json(p, alphabet));
  j["frequency_rank"] = r.frequency_rank ? nlohmann::json(*r.frequency_rank) : nlohmann::json(nullptr);
  j["rank_method"] = r.rank_method;
  j["letters_verdict"] = to_string(r.letters_verdict);
  j["factors_verdict"] = to_string(r.factors_verdict);
  j["class_certified"] = r.class_certified;
  j["birkhoff"] = nlohmann::json::array();
  for (const auto& b : r.birkhoff)
    j["birkhoff"].push_back({{"letter", alphabet.render(Word{b.v})},
                             {"max_centered", rational_json(b.max_centered)},
                             {"prefixes", b.prefixes},
                             {"bound", b.bound},
                             {"within", b.within}});
  j["notes"] = r.notes;
  return j;
}

}  // namespace sadic

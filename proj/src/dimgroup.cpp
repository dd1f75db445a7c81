#include "sadic/dimgroup.hpp"

#include "sadic/errors.hpp"
#include "sadic/linalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace sadic {

bool DimensionGroupDescriptor::exact() const {
  return !measures.empty() && std::all_of(measures.begin(), measures.end(), [](const MeasurePoint& m) { return m.exact.has_value(); });
}

void DimensionGroupDescriptor::validate() const {
  if (d == 0) throw InputError("descriptor: dimension must be positive");
  if (measures.empty()) throw InputError("descriptor: no extreme measures");
  if (d > 1 && measures.size() > d - 1) throw InputError("descriptor: more than d - 1 extreme measures");
  for (const auto& m : measures) {
    if (m.box.size() != d) throw InputError("descriptor: measure of the wrong dimension");
    Interval total(Rational(0));
    for (const auto& c : m.box) {
      if (c.hi < 0) throw InputError("descriptor: negative measure coordinate");
      total += c;
    }
    if (!total.contains(Rational(1))) throw InputError("descriptor: measure box does not straddle total mass 1");
    if (m.exact) {
      if (m.exact->size() != d) throw InputError("descriptor: exact measure of the wrong dimension");
      QuadraticNumber sum(0);
      for (const auto& x : *m.exact) {
        if (x.sign() < 0) throw InputError("descriptor: negative measure coordinate");
        sum += x;
      }
      if (sum != QuadraticNumber(1)) throw InputError("descriptor: exact measure does not sum to 1");
    }
  }
}

namespace {

IntegerVector ones(std::size_t d) { return IntegerVector::Ones(static_cast<Eigen::Index>(d)); }

}  // namespace

DimensionGroupDescriptor exact_descriptor(std::vector<QuadraticVector> measures, std::string provenance) {
  DimensionGroupDescriptor D;
  if (measures.empty()) throw InputError("descriptor: no extreme measures");
  D.d = measures.front().size();
  for (auto& m : measures) D.measures.push_back({enclose(m, pow10(-60)), std::move(m)});
  D.unit = ones(D.d);
  D.provenance = std::move(provenance);
  D.validate();
  return D;
}

DimensionGroupDescriptor box_descriptor(std::vector<Box> measures, std::string provenance) {
  DimensionGroupDescriptor D;
  if (measures.empty()) throw InputError("descriptor: no extreme measures");
  D.d = measures.front().size();
  for (auto& m : measures) D.measures.push_back({std::move(m), std::nullopt});
  D.unit = ones(D.d);
  D.provenance = std::move(provenance);
  D.validate();
  return D;
}

DimensionGroupDescriptor descriptor(const DirectiveSequence& ds, const DescriptorOptions& options) {
  const auto cert = certify(ds, 1);
  if (cert.primitive.verdict != Verdict::yes || !cert.unimodular)
    throw PreconditionError("descriptor needs a sequence certified primitive and unimodular");
  return measure_descriptor(ds, options);
}

DimensionGroupDescriptor measure_descriptor(const DirectiveSequence& ds, const DescriptorOptions& options) {
  const auto probe = ergodicity_probe(ds, options.max_depth, options.eps);
  DimensionGroupDescriptor D;
  D.d = ds.dimension();
  D.unit = ones(D.d);
  D.provenance = "cone probe, eps " + to_fraction_string(options.eps);
  switch (probe.kind) {
    case ProbeKind::inconclusive:
      throw InconclusiveError("descriptor: measure probe inconclusive: " + to_json(probe).dump());
    case ProbeKind::multiple:
      D.depth = probe.depth;
      for (const auto& c : probe.clusters) D.measures.push_back({c, std::nullopt});
      D.provenance += ", cluster boxes at depth " + std::to_string(probe.depth);
      break;
    case ProbeKind::unique:
      if (auto exact = exact_letter_measure(ds)) {
        D.measures.push_back({enclose(*exact, options.refine), std::move(exact)});
        D.depth = probe.depth;
        D.provenance += ", exact Perron vector of the period";
        break;
      }
      // Keep descending until the box is as narrow as asked.
      ConeSweep sweep(ds);
      std::size_t limit = options.max_depth;
      if (auto h = ds.horizon(); h && *h < limit) limit = *h;
      while (sweep.cone().depth < limit && sweep.cone().diameter >= options.refine) sweep.advance();
      D.depth = sweep.cone().depth;
      D.measures.push_back({sweep.cone().box(), std::nullopt});
      D.provenance += ", cone box at depth " + std::to_string(D.depth);
      break;
  }
  D.validate();
  return D;
}

std::string to_string(ConeClass c) {
  switch (c) {
    case ConeClass::positive: return "positive";
    case ConeClass::zero: return "zero";
    case ConeClass::negative_or_mixed: return "negative_or_mixed";
    case ConeClass::undecidable: return "undecidable";
  }
  return "?";
}

std::string to_string(LatticeStatus s) {
  switch (s) {
    case LatticeStatus::exact: return "exact";
    case LatticeStatus::trivial: return "trivial";
    case LatticeStatus::candidate: return "candidate";
    case LatticeStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(SoeVerdict v) {
  switch (v) {
    case SoeVerdict::witness: return "witness";
    case SoeVerdict::no_witness_within_bound: return "no_witness_within_bound";
    case SoeVerdict::not_soe: return "not_soe";
  }
  return "?";
}

namespace {

Interval pairing(const IntegerVector& x, const Box& box) {
  Interval s(Rational(0));
  for (std::size_t i = 0; i < box.size(); ++i) s += Rational(x(static_cast<Eigen::Index>(i))) * box[i];
  return s;
}

QuadraticNumber pairing(const IntegerVector& x, const QuadraticVector& v) {
  QuadraticNumber s(0);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (x(static_cast<Eigen::Index>(i)) != 0) s += QuadraticNumber(Rational(x(static_cast<Eigen::Index>(i)))) * v[i];
  return s;
}

bool in_span(const IntegerMatrix& basis, const IntegerVector& x) {
  if (basis.cols() == 0) return false;
  RationalMatrix with(basis.rows(), basis.cols() + 1);
  with.leftCols(basis.cols()) = basis.cast<Rational>();
  with.col(basis.cols()) = x.cast<Rational>();
  return rank<Rational>(with) == rank<Rational>(RationalMatrix(basis.cast<Rational>()));
}

Integer lcm_of_denominators(const std::vector<Rational>& row) {
  Integer l = 1;
  for (const auto& r : row) l = mp::lcm(l, denominator(r));
  return l;
}

InfinitesimalLattice exact_lattice(const DimensionGroupDescriptor& D) {
  // a + b sqrt(R) vanishes iff a and b do; one constraint row per radicand and measure.
  std::vector<std::vector<Rational>> rows;
  for (const auto& m : D.measures) {
    std::map<Integer, std::vector<Rational>> surd;
    std::vector<Rational> rational(D.d);
    for (std::size_t i = 0; i < D.d; ++i) {
      const auto& x = (*m.exact)[i];
      rational[i] = x.rational_part();
      if (!x.is_rational()) {
        auto& row = surd[x.radicand()];
        row.resize(D.d);
        row[i] = x.surd_part();
      }
    }
    rows.push_back(rational);
    for (auto& [radicand, row] : surd) rows.push_back(row);
  }
  IntegerMatrix a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(D.d));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Integer scale = lcm_of_denominators(rows[r]);
    for (std::size_t i = 0; i < D.d; ++i) {
      const Rational v = rows[r][i] * Rational(scale);
      a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) = numerator(v);
    }
  }
  InfinitesimalLattice L;
  L.basis = integer_kernel(a);
  L.status = LatticeStatus::exact;
  L.method = "exact";
  return L;
}

Integer round_nearest(const Rational& r) { return floor(r + Rational(1, 2)); }

InfinitesimalLattice interval_lattice(const DimensionGroupDescriptor& D, const Integer& bound) {
  InfinitesimalLattice L;
  L.coefficient_bound = bound;
  const std::size_t d = D.d, m = D.measures.size();
  Rational w = 0;
  for (const auto& p : D.measures)
    for (const auto& c : p.box) w = std::max(w, c.width());
  L.method = "integer-relation(width=" + to_decimal_string(w, 70) + ")";
  L.basis = IntegerMatrix(static_cast<Eigen::Index>(d), 0);
  // Scale so that K * w * d * bound <= 1.
  const Integer scale = w == 0 ? pow(Integer(10), 80) : floor(Rational(1) / (w * Rational(Integer(d) * bound)));
  if (scale < 1) {
    L.status = LatticeStatus::inconclusive;
    return L;
  }
  const auto de = static_cast<Eigen::Index>(d);
  IntegerMatrix lattice = IntegerMatrix::Zero(de, de + static_cast<Eigen::Index>(m));
  for (Eigen::Index i = 0; i < de; ++i) {
    lattice(i, i) = 1;
    for (std::size_t k = 0; k < m; ++k)
      lattice(i, de + static_cast<Eigen::Index>(k)) = round_nearest(Rational(scale) * D.measures[k].box[static_cast<std::size_t>(i)].midpoint());
  }
  lll_reduce(lattice);

  std::vector<IntegerVector> found;
  for (Eigen::Index r = 0; r < de; ++r) {
    const IntegerVector x = lattice.row(r).head(de).transpose();
    if (x.isZero()) continue;
    bool small = true;
    for (Eigen::Index i = 0; i < de; ++i) small = small && abs(x(i)) <= bound;
    if (!small) continue;
    bool consistent = true;
    for (const auto& p : D.measures) consistent = consistent && pairing(x, p.box).contains_zero();
    if (consistent) found.push_back(x);
  }
  if (!found.empty()) {
    L.basis = IntegerMatrix(de, static_cast<Eigen::Index>(found.size()));
    for (std::size_t c = 0; c < found.size(); ++c) {
      IntegerVector x = found[c];
      for (Eigen::Index i = 0; i < de; ++i) {
        if (x(i) == 0) continue;
        if (x(i) < 0) x = -x;
        break;
      }
      L.basis.col(static_cast<Eigen::Index>(c)) = x;
    }
    L.status = LatticeStatus::candidate;
    return L;
  }
  // Any true relation x with |x|_inf <= bound gives a lattice vector of norm^2 at most
  // d bound^2 + m (d bound (1 + K w) / 2)^2; no lattice vector is shorter than min |b_i*|.
  const Rational half_residual = Rational(Integer(d) * bound) * (1 + Rational(scale) * w) / 2;
  const Rational longest = Rational(Integer(d) * bound * bound) + Rational(Integer(m)) * half_residual * half_residual;
  const auto gs = gram_schmidt_norms2(lattice);
  const Rational shortest = *std::min_element(gs.begin(), gs.end());
  L.status = longest < shortest ? LatticeStatus::trivial : LatticeStatus::inconclusive;
  return L;
}

}  // namespace

ConeClass cone_membership(const DimensionGroupDescriptor& D, const IntegerVector& x) {
  if (static_cast<std::size_t>(x.size()) != D.d) throw InputError("cone_membership: vector of the wrong dimension");
  if (x.isZero()) return ConeClass::zero;
  std::size_t positive = 0, zero = 0, straddling = 0;
  for (const auto& m : D.measures) {
    if (m.exact) {
      const int s = pairing(x, *m.exact).sign();
      if (s < 0) return ConeClass::negative_or_mixed;
      (s > 0 ? positive : zero)++;
      continue;
    }
    const Interval p = pairing(x, m.box);
    if (p.negative()) return ConeClass::negative_or_mixed;
    if (p.positive()) {
      ++positive;
    } else {
      ++straddling;
    }
  }
  if (straddling > 0) {
    const auto L = infinitesimal_lattice(D);
    if (L.status == LatticeStatus::inconclusive || L.status == LatticeStatus::trivial || !in_span(L.basis, x))
      return ConeClass::undecidable;
    zero += straddling;
  }
  if (positive == D.measures.size()) return ConeClass::positive;
  if (zero == D.measures.size()) return ConeClass::zero;
  return ConeClass::negative_or_mixed;
}

InfinitesimalLattice infinitesimal_lattice(const DimensionGroupDescriptor& D, const Integer& coefficient_bound) {
  if (D.exact()) {
    auto L = exact_lattice(D);
    L.coefficient_bound = coefficient_bound;
    return L;
  }
  return interval_lattice(D, coefficient_bound);
}

ImageSubgroup image_subgroup_generators(const DimensionGroupDescriptor& D) {
  ImageSubgroup out;
  for (const auto& m : D.measures) {
    std::vector<MeasurePoint> list;
    for (std::size_t a = 0; a < D.d; ++a) {
      MeasurePoint g{{m.box[a]}, std::nullopt};
      if (m.exact) g.exact = QuadraticVector{(*m.exact)[a]};
      list.push_back(std::move(g));
    }
    out.generators.push_back(std::move(list));
  }
  if (D.measures.size() == 1 && D.exact()) {
    const auto& v = *D.measures.front().exact;
    for (std::size_t a = 0; a < D.d; ++a)
      for (std::size_t b = a + 1; b < D.d; ++b)
        if (v[a] == v[b]) out.duplicates.emplace_back(a, b);
    if (!out.duplicates.empty()) out.note = "duplicate generators: the letter measures are not all distinct";
  }
  if (D.measures.size() > 1) out.note = "several extreme measures: one generator list each; their intersection is not computed";
  return out;
}

namespace {

bool same_value(const QuadraticNumber& x, const QuadraticNumber& y) {
  if (!x.is_rational() && !y.is_rational() && x.radicand() != y.radicand()) return false;
  return x == y;
}

/// <c, mu> compatible with nu_j, exactly when both sides are exact.
bool compatible(const IntegerVector& c, const MeasurePoint& mu, const MeasurePoint& nu, std::size_t j) {
  if (mu.exact && nu.exact) return same_value(pairing(c, *mu.exact), (*nu.exact)[j]);
  return pairing(c, mu.box).intersects(nu.box[j]);
}

bool row_major_less(const IntegerMatrix& a, const IntegerMatrix& b) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return a(i, j) < b(i, j);
  return false;
}

struct Search {
  const DimensionGroupDescriptor& left;
  const DimensionGroupDescriptor& right;
  const std::vector<std::size_t>& perm;  // left measure k pairs with right measure perm[k]
  int bound;
  Eigen::Index d;
  std::vector<std::vector<IntegerVector>> candidates;
  std::vector<Integer> distance;  // per chosen column
  IntegerMatrix current;
  std::optional<IntegerMatrix>& best;
  Integer& best_distance;

  bool column_ok(const IntegerVector& c, std::size_t j) const {
    for (std::size_t k = 0; k < perm.size(); ++k)
      if (!compatible(c, left.measures[k], right.measures[perm[k]], j)) return false;
    return true;
  }

  void offer(const Integer& dist) {
    const Integer det = bareiss_determinant(current);
    if (det != 1 && det != -1) return;
    if (!best || dist < best_distance || (dist == best_distance && row_major_less(current, *best))) {
      best = current;
      best_distance = dist;
    }
  }

  void descend(Eigen::Index j, const Integer& dist) {
    if (best && dist > best_distance) return;
    if (j == d - 1) {
      // Row sums equal 1 fix the last column.
      IntegerVector last = IntegerVector::Ones(d) - current.leftCols(d - 1).rowwise().sum();
      for (Eigen::Index i = 0; i < d; ++i)
        if (abs(last(i)) > bound) return;
      if (!column_ok(last, static_cast<std::size_t>(j))) return;
      current.col(j) = last;
      IntegerVector e = IntegerVector::Zero(d);
      e(j) = 1;
      Integer total = dist;
      for (Eigen::Index i = 0; i < d; ++i) total += abs(last(i) - e(i));
      if (best && total > best_distance) return;
      offer(total);
      return;
    }
    for (const auto& c : candidates[static_cast<std::size_t>(j)]) {
      IntegerVector e = IntegerVector::Zero(d);
      e(j) = 1;
      Integer step = 0;
      for (Eigen::Index i = 0; i < d; ++i) step += abs(c(i) - e(i));
      current.col(j) = c;
      descend(j + 1, dist + step);
    }
  }
};

std::vector<IntegerVector> column_candidates(const Search& s, std::size_t j) {
  std::vector<IntegerVector> out;
  IntegerVector c = IntegerVector::Constant(s.d, Integer(-s.bound));
  for (;;) {
    if (s.column_ok(c, j)) out.push_back(c);
    Eigen::Index i = s.d - 1;
    while (i >= 0 && c(i) == s.bound) c(i--) = -s.bound;
    if (i < 0) break;
    c(i) += 1;
  }
  // Columns near the unit vector first, so the distance bound prunes early.
  IntegerVector e = IntegerVector::Zero(s.d);
  e(static_cast<Eigen::Index>(j)) = 1;
  std::stable_sort(out.begin(), out.end(), [&](const IntegerVector& a, const IntegerVector& b) {
    Integer da = 0, db = 0;
    for (Eigen::Index i = 0; i < s.d; ++i) {
      da += abs(a(i) - e(i));
      db += abs(b(i) - e(i));
    }
    return da < db;
  });
  return out;
}

}  // namespace

SoeResult soe_test(const DimensionGroupDescriptor& left, const DimensionGroupDescriptor& right, int bound) {
  if (bound < 1) throw InputError("soe_test: bound must be at least 1");
  SoeResult result;
  result.bound = bound;
  if (left.d != right.d) {
    result.verdict = SoeVerdict::not_soe;
    result.note = "alphabets of different cardinality";
    return result;
  }
  if (left.measures.size() != right.measures.size())
    throw PreconditionError("soe_test: descriptors report different numbers of extreme measures");
  left.validate();
  right.validate();

  std::vector<std::size_t> perm(left.measures.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<IntegerMatrix> best;
  Integer best_distance = 0;
  const auto d = static_cast<Eigen::Index>(left.d);
  do {
    Search s{left, right, perm, bound, d, {}, {}, IntegerMatrix::Zero(d, d), best, best_distance};
    bool empty = false;
    for (Eigen::Index j = 0; j + 1 < d && !empty; ++j) {
      s.candidates.push_back(column_candidates(s, static_cast<std::size_t>(j)));
      empty = s.candidates.back().empty();
    }
    if (!empty) s.descend(0, 0);
  } while (std::next_permutation(perm.begin(), perm.end()));

  if (!best) {
    result.note = "no unimodular witness with entries bounded by " + std::to_string(bound) +
                  "; this does not rule out strong orbit equivalence";
    return result;
  }
  result.verdict = SoeVerdict::witness;
  result.matrix = best;
  result.inverse = unimodular_inverse(*best);
  if (!result.inverse || !verify_soe_witness(left, right, *best) || !verify_soe_witness(right, left, *result.inverse))
    throw std::logic_error("soe_test: witness failed verification");
  if (!left.exact() || !right.exact()) result.note = "measure mapping verified to the precision of the enclosures";
  return result;
}

bool verify_soe_witness(const DimensionGroupDescriptor& left, const DimensionGroupDescriptor& right, const IntegerMatrix& m) {
  const auto d = static_cast<Eigen::Index>(left.d);
  if (right.d != left.d || m.rows() != d || m.cols() != d) return false;
  if (IntegerVector(m * IntegerVector::Ones(d)) != IntegerVector::Ones(d)) return false;
  const Integer det = bareiss_determinant(m);
  if (det != 1 && det != -1) return false;
  if (left.measures.size() != right.measures.size()) return false;
  std::vector<std::size_t> perm(left.measures.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t k = 0; k < perm.size() && ok; ++k)
      for (Eigen::Index j = 0; j < d && ok; ++j)
        ok = compatible(m.col(j), left.measures[k], right.measures[perm[k]], static_cast<std::size_t>(j));
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

nlohmann::json quadratic_json(const QuadraticNumber& x) {
  const Interval box = x.enclose(pow10(-20));
  return {{"exact", x.to_string()}, {"decimal", to_decimal_string(box.lo, 15)}};
}

nlohmann::json integer_matrix_json(const IntegerMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

namespace {

nlohmann::json point_json(const MeasurePoint& p) {
  nlohmann::json j;
  j["box"] = box_json(p.box);
  if (p.exact) {
    j["exact"] = nlohmann::json::array();
    for (const auto& x : *p.exact) j["exact"].push_back(quadratic_json(x));
  }
  return j;
}

}  // namespace

nlohmann::json to_json(const DimensionGroupDescriptor& D) {
  nlohmann::json j;
  j["d"] = D.d;
  j["unit"] = nlohmann::json::array();
  for (Eigen::Index i = 0; i < D.unit.size(); ++i) j["unit"].push_back(D.unit(i).str());
  j["measures"] = nlohmann::json::array();
  for (const auto& m : D.measures) j["measures"].push_back(point_json(m));
  j["provenance"] = D.provenance;
  j["depth"] = D.depth;
  return j;
}

namespace {

std::string number_text(const nlohmann::json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_object() && j.contains("exact")) return j.at("exact").get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw InputError("descriptor: numbers must be strings or {\"exact\": ...}");
}

}  // namespace

DimensionGroupDescriptor descriptor_from_json(const nlohmann::json& j) {
  try {
    DimensionGroupDescriptor D;
    const auto& ms = j.at("measures");
    if (!ms.is_array() || ms.empty()) throw InputError("descriptor: 'measures' must be a non-empty array");
    for (const auto& mj : ms) {
      MeasurePoint p;
      if (mj.contains("exact")) {
        QuadraticVector v;
        for (const auto& x : mj.at("exact")) v.push_back(QuadraticNumber::parse(number_text(x)));
        p.exact = std::move(v);
      }
      if (mj.contains("box")) {
        for (const auto& c : mj.at("box")) p.box.emplace_back(parse_rational(number_text(c.at("lo"))), parse_rational(number_text(c.at("hi"))));
      } else if (p.exact) {
        p.box = enclose(*p.exact, pow10(-60));
      } else {
        throw InputError("descriptor: a measure needs 'box' or 'exact'");
      }
      if (p.exact && p.box.size() == p.exact->size())
        for (std::size_t i = 0; i < p.box.size(); ++i) {
          const auto& x = (*p.exact)[i];
          if (x < QuadraticNumber(p.box[i].lo) || x > QuadraticNumber(p.box[i].hi))
            throw InputError("descriptor: exact value outside its box");
        }
      D.measures.push_back(std::move(p));
    }
    D.d = j.contains("d") ? j.at("d").get<std::size_t>() : D.measures.front().box.size();
    D.unit = ones(D.d);
    D.provenance = j.value("provenance", std::string("file"));
    D.depth = j.value("depth", std::size_t{0});
    D.validate();
    return D;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed descriptor JSON: ") + e.what());
  }
}

nlohmann::json to_json(const InfinitesimalLattice& L) {
  nlohmann::json j;
  j["status"] = to_string(L.status);
  j["method"] = L.method;
  j["coefficient_bound"] = L.coefficient_bound.str();
  j["basis"] = integer_matrix_json(IntegerMatrix(L.basis.transpose()));
  j["rank"] = L.rank();
  return j;
}

nlohmann::json to_json(const ImageSubgroup& I) {
  nlohmann::json j;
  j["generators"] = nlohmann::json::array();
  for (const auto& list : I.generators) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& g : list) {
      nlohmann::json e;
      e["enclosure"] = interval_json(g.box.front());
      if (g.exact) e["exact"] = quadratic_json(g.exact->front());
      arr.push_back(e);
    }
    j["generators"].push_back(arr);
  }
  j["duplicates"] = nlohmann::json::array();
  for (const auto& [a, b] : I.duplicates) j["duplicates"].push_back({a, b});
  if (!I.note.empty()) j["note"] = I.note;
  return j;
}

nlohmann::json to_json(const SoeResult& r) {
  nlohmann::json j;
  j["verdict"] = to_string(r.verdict);
  j["bound"] = r.bound;
  if (r.matrix) j["witness"] = integer_matrix_json(*r.matrix);
  if (r.inverse) j["inverse"] = integer_matrix_json(*r.inverse);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

}  // namespace sadic

#pragma once

// Dimension-group descriptors: extreme letter measures, the positive cone they cut out,
// infinitesimals, and the unimodular-matrix test for strong orbit equivalence.

#include "sadic/measures.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sadic {

/// One extreme letter measure: always a box, and the exact vector when known.
struct MeasurePoint {
  Box box;
  std::optional<QuadraticVector> exact;
};

struct DimensionGroupDescriptor {
  std::size_t d = 0;
  std::vector<MeasurePoint> measures;
  IntegerVector unit;  // all ones
  std::string provenance;
  std::size_t depth = 0;  // cone depth behind the boxes, 0 when given directly

  bool exact() const;
  /// Checks the descriptor invariants; throws InputError.
  void validate() const;
};

struct DescriptorOptions {
  std::size_t max_depth = 400;
  Rational eps = pow10(-8);
  /// Target box width once uniqueness is known.
  Rational refine = pow10(-60);
};

/// Packages the measure probe. Requires a primitive unimodular sequence; throws
/// InconclusiveError (message carries the probe report) when the probe is inconclusive.
DimensionGroupDescriptor descriptor(const DirectiveSequence& ds, const DescriptorOptions& options = {});

/// Same packaging for any primitive sequence; the result describes letter measures only.
DimensionGroupDescriptor measure_descriptor(const DirectiveSequence& ds, const DescriptorOptions& options = {});

/// Descriptor from known exact measure vectors.
DimensionGroupDescriptor exact_descriptor(std::vector<QuadraticVector> measures, std::string provenance);

/// Descriptor from boxes alone.
DimensionGroupDescriptor box_descriptor(std::vector<Box> measures, std::string provenance);

enum class ConeClass { positive, zero, negative_or_mixed, undecidable };
std::string to_string(ConeClass c);

/// Sign pattern of <x, mu> over the extreme measures. Throws InputError on a size mismatch.
ConeClass cone_membership(const DimensionGroupDescriptor& D, const IntegerVector& x);

enum class LatticeStatus {
  exact,      // kernel computed exactly in the measure field
  trivial,    // no relation with coefficients up to the bound (lattice certificate)
  candidate,  // relations consistent with the enclosures, not provable from them
  inconclusive
};
std::string to_string(LatticeStatus s);

struct InfinitesimalLattice {
  IntegerMatrix basis;  // columns
  LatticeStatus status = LatticeStatus::inconclusive;
  std::string method;   // "exact" or "integer-relation(width=...)"
  Integer coefficient_bound;

  std::size_t rank() const { return static_cast<std::size_t>(basis.cols()); }
};

InfinitesimalLattice infinitesimal_lattice(const DimensionGroupDescriptor& D, const Integer& coefficient_bound = Integer(1000000));

struct ImageSubgroup {
  /// One list per extreme measure; entry a is mu([a]).
  std::vector<std::vector<MeasurePoint>> generators;  // each MeasurePoint holds a single coordinate
  std::vector<std::pair<std::size_t, std::size_t>> duplicates;  // equal generators (exact only)
  std::string note;
};

ImageSubgroup image_subgroup_generators(const DimensionGroupDescriptor& D);

enum class SoeVerdict { witness, no_witness_within_bound, not_soe };
std::string to_string(SoeVerdict v);

struct SoeResult {
  SoeVerdict verdict = SoeVerdict::no_witness_within_bound;
  std::optional<IntegerMatrix> matrix;
  std::optional<IntegerMatrix> inverse;
  int bound = 0;
  std::string note;
};

/// Searches integer matrices M with |entries| <= bound, M 1 = 1, |det M| = 1 and
/// {M^T mu} = {nu}. Among valid matrices the one closest to the identity in L1 is
/// returned, ties broken lexicographically (row-major).
SoeResult soe_test(const DimensionGroupDescriptor& left, const DimensionGroupDescriptor& right, int bound);

/// Exact checks of M 1 = 1 and |det M| = 1, and the measure mapping to descriptor precision.
bool verify_soe_witness(const DimensionGroupDescriptor& left, const DimensionGroupDescriptor& right, const IntegerMatrix& m);

nlohmann::json to_json(const DimensionGroupDescriptor& D);
/// Reads the to_json layout back. Numbers may be given as strings or as {"exact": string};
/// a measure needs "box", "exact" or both. Throws InputError.
DimensionGroupDescriptor descriptor_from_json(const nlohmann::json& j);
nlohmann::json to_json(const InfinitesimalLattice& L);
nlohmann::json to_json(const ImageSubgroup& I);
nlohmann::json to_json(const SoeResult& r);
nlohmann::json quadratic_json(const QuadraticNumber& x);
nlohmann::json integer_matrix_json(const IntegerMatrix& m);

}  // namespace sadic

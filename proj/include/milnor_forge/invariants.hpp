#pragma once

// Matrix groups over F_p acting on H^*(BA_n; F_p) and their degreewise fixed
// subspaces.

#include "milnor_forge/ffla.hpp"
#include "milnor_forge/galg.hpp"
#include "milnor_forge/report.hpp"

#include <string>
#include <vector>

namespace milnor_forge::invariants {

using galg::ContextPtr;
using galg::Element;

class ActionMatrix {
public:
  // Throws InvalidArgument if m is not square and invertible.
  ActionMatrix(ffla::FieldMatrix m, std::string label);

  const ffla::FieldMatrix &matrix() const { return m_; }
  const std::string &label() const { return label_; }
  ActionMatrix inverse() const;

private:
  ffla::FieldMatrix m_;
  std::string label_;
};

struct WeylPresentation {
  unsigned prime;
  std::size_t rank;
  std::vector<ActionMatrix> generators;
};

// Generators of W in the order: the two SL_2 generators acting on (x, y),
// then the generator sending z to x + z.
WeylPresentation weyl_generators(unsigned prime);
// The subgroup W_0 generated by the first two.
WeylPresentation w0_generators(unsigned prime);
// SL_2 generators on H^*(BA_2).
WeylPresentation sl2_generators(unsigned prime);

// e_j -> sum_i M_{ji} e_i on degree-1 generators, and the same matrix on
// their Bockstein partners. Throws DimensionMismatch on a rank mismatch.
galg::AlgebraMap induced_action(const ffla::FieldMatrix &m, const ContextPtr &ctx);

// Intersection over generators and their inverses of ker(1 - g^*) in degree d,
// as elements. Re-checks invariance of the result; throws Error on failure.
std::vector<Element> invariant_subspace(const ContextPtr &ctx, int d, const WeylPresentation &w);

// Fixed subspace of an explicit list of group elements (no inverses added).
std::vector<Element> fixed_subspace(const ContextPtr &ctx, int d,
                                    const std::vector<ffla::FieldMatrix> &elements);

// True when every element lies in the F_p-span of basis.
bool spans_contain(const std::vector<Element> &basis, const std::vector<Element> &elements);

// Breadth-first closure of the generated group. Throws Error past cap elements.
std::vector<ffla::FieldMatrix> group_closure(const WeylPresentation &w, std::size_t cap = 1000000);

// [[a, b, 0], [c, d, 0], [*, 0, 1]] with ad - bc = 1.
bool literal_shape(const ffla::FieldMatrix &m);
// [[a, b, 0], [c, d, 0], [*, *, 1]] with ad - bc = 1.
bool block_shape(const ffla::FieldMatrix &m);

// Degree-4 invariants of W_0 and W, and Q_1 of the W-invariant class.
ReportList verify_odd_invariants(unsigned prime);
// Degree-4 invariants of W_0 and W at p = 2, and W_0-invariance of u2.
ReportList verify_two_primary_invariants();
ReportList dickson_invariance(unsigned prime);
// Closure enumeration for small primes; the literal shape mismatch is
// reported with literal_status (note in the CLI, fail in acceptance runs).
ReportList group_closure_oracle(unsigned prime, Status literal_status = Status::note);
// (1 - f^*) on the three W_0-invariants under z -> x + z and z -> z - x.
ReportList f_star_sign_report(unsigned prime);
// Replacing every generator by its inverse leaves the degree-4 invariants unchanged.
ReportList convention_independence(unsigned prime);

// Context used for the degree-4 computations: BA_3 with working degree 2p + 3
// (7 at p = 2) and bidegrees attached.
ContextPtr ba3_context(unsigned prime);

} // namespace milnor_forge::invariants

#pragma once

// Odd derivations on truncated graded-commutative algebras: the Milnor
// primitives Q_j, and (reused by the spectral sequence engine) differentials.

#include "milnor_forge/galg.hpp"
#include "milnor_forge/report.hpp"

#include <map>
#include <string>
#include <vector>

namespace milnor_forge::milnor {

using galg::ContextPtr;
using galg::Element;
using galg::Mode;
using galg::Monomial;

// An odd derivation: D(ab) = D(a) b + (-1)^{|a|} a D(b), where |a| counts odd
// generator factors. Determined by its values on generators.
class Derivation {
public:
  // images[i] is D(generator i); each must be zero or homogeneous of degree
  // deg(generator i) + shift. Throws InvalidArgument.
  Derivation(ContextPtr ctx, int shift, std::vector<Element> images);
  // Unlisted generators map to zero.
  static Derivation from_map(ContextPtr ctx, int shift,
                             const std::map<std::string, Element> &images);

  const ContextPtr &context() const { return ctx_; }
  int shift() const { return shift_; }
  const Element &image(std::size_t i) const { return images_[i]; }

  Element apply(const Monomial &m, Mode mode = Mode::exact) const;
  Element apply(const Element &e, Mode mode = Mode::exact) const;

private:
  ContextPtr ctx_;
  int shift_;
  std::vector<Element> images_;
};

// Q_j on a context whose generators are degree-1 classes with Bockstein
// partners plus those partners: Q_j(g) = (Q_0 g)^{p^j}, Q_j(partner) = 0;
// at p = 2, Q_j(g) = g^{2^{j+1}}. Shift 2 p^j - 1.
// Throws TruncationOverflow when an image exceeds the working degree and
// InvalidArgument when a generator has no Bockstein data.
Derivation milnor_q(unsigned j, ContextPtr ctx);

// Q_0(x1 y1), Q_1(x1 y1), Q_1 Q_0(x1 y1) and the six-term Q_1 Q_0(x1 y1 z1),
// plus a note on the exponent missing from one term of the reference expansion.
ReportList verify_q_expansion_odd(unsigned prime);
// Q_1(x1 y1 z1), Q_0 Q_1(x1 y1 z1) and Q_1(u3 z1 + u2 z1^2 + z1^4) at p = 2.
ReportList verify_q_expansion_two();
// Q_2 Q_0(x1 y1) = u_{2p+2} u_{2p^2-2p} with the closed sum for the second factor.
ReportList dickson_mui_check(unsigned prime);

// Build sum of coefficient * product of named generator powers, multiplying
// in the written order so Koszul signs come out of the algebra.
struct Term {
  std::int64_t coeff;
  std::vector<std::pair<std::string, unsigned>> factors;
};
Element build(const ContextPtr &ctx, const std::vector<Term> &terms);

} // namespace milnor_forge::milnor

#include "toricbetti/table.hpp"

#include <stdexcept>

#include "toricbetti/errors.hpp"

namespace toricbetti {

namespace {
const char* const kProvenanceNames[] = {"pending",    "computed",   "crossfilled",    "zero_by_shape",
                                        "zero_by_hs", "zero_by_bn3", "eagon_northcott"};
}

std::string to_string(Provenance p) { return kProvenanceNames[static_cast<int>(p)]; }

Provenance provenance_from_string(const std::string& s) {
  for (int i = 0; i < 7; ++i)
    if (s == kProvenanceNames[i]) return static_cast<Provenance>(i);
  throw ParseError("unknown provenance tag: " + s);
}

std::string to_string(Strand s) { return s == Strand::linear ? "b" : "c"; }

BettiTable::BettiTable(int n_points, std::uint32_t p) : n(n_points), prime(p) {
  auto len = static_cast<std::size_t>(length());
  b.assign(len, 0);
  c.assign(len, 0);
  b_prov.assign(len, Provenance::pending);
  c_prov.assign(len, Provenance::pending);
}

Count BettiTable::b_at(int ell) const {
  if (ell < 1 || ell > length()) return 0;
  return b[static_cast<std::size_t>(ell - 1)];
}

Count BettiTable::c_at(int ell) const {
  if (ell < 1 || ell > length()) return 0;
  return c[static_cast<std::size_t>(ell - 1)];
}

void BettiTable::set_b(int ell, Count v, Provenance p) {
  if (ell < 1 || ell > length()) throw RangeError("linear index out of range");
  b[static_cast<std::size_t>(ell - 1)] = v;
  b_prov[static_cast<std::size_t>(ell - 1)] = p;
}

void BettiTable::set_c(int ell, Count v, Provenance p) {
  if (ell < 1 || ell > length()) throw RangeError("quadratic index out of range");
  c[static_cast<std::size_t>(ell - 1)] = v;
  c_prov[static_cast<std::size_t>(ell - 1)] = p;
}

// Betti numbers can only grow under reduction modulo p, so zeros are certified
// and so is the other entry on the antidiagonal of a certified zero.
bool BettiTable::b_starred(int ell) const {
  if (prime == 0 || b_at(ell) == 0) return false;
  // An entry is certified when its antidiagonal partner is zero: the partner
  // can only grow under reduction mod p, and the difference is fixed.
  auto p = b_provenance(ell);
  if (p != Provenance::computed && p != Provenance::crossfilled) return false;
  return c_at(n - 1 - ell) != 0;
}

bool BettiTable::c_starred(int ell) const {
  if (prime == 0 || c_at(ell) == 0) return false;
  auto p = c_provenance(ell);
  if (p != Provenance::computed && p != Provenance::crossfilled) return false;
  return b_at(n - 1 - ell) != 0;
}

}  // namespace toricbetti

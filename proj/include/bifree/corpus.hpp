#pragma once

#include <cstdint>

#include "bifree/distributions.hpp"

namespace bifree {

// Models used by the verification suite, the tests and the example files.

OraclePtr shift_pair(unsigned id = 0);

// Z = [[1,0],[0,0]], W = [[0,0],[1,0]] in (M_2, tr).
OraclePtr quarter_pair(unsigned id = 0);

// Off-diagonal Z = [[0,1],[1/2,0]], W = [[0,1],[1,0]]: *-bi-even, not
// bi-R-diagonal (kappa(Z,Z) = 1/2).
OraclePtr offdiag_pair(unsigned id = 0);

// A 2x2 pair with no symmetry: complex entries, nonzero odd moments.
OraclePtr generic_pair(unsigned id = 0);

// Z = [[0,X1],[X2,0]], W = [[0,Y1],[Y2,0]] with 2x2 blocks whose entries are
// drawn from {-2..2}/{1,2}.
OraclePtr random_bi_even_pair(std::uint64_t seed, unsigned id = 0);

// (u_l X, Y u_r) where (u_l, u_r) is `haar` (a bi-Haar pair, shift by
// default) taken bi-free from (X, Y).
OraclePtr haar_rotated(const OraclePtr& xy, unsigned id = 0, OraclePtr haar = nullptr);

// (u_l v_l, v_r u_r) for two bi-free shift pairs: a second bi-Haar pair.
OraclePtr composite_haar_pair(unsigned id = 0);

} // namespace bifree

#pragma once

// Closed-form and root-finding references that share no code with the
// matrix pipeline. The property suite checks the pipeline against them.

#include <vector>

namespace rotorbell::reference {

// Roots of the Legendre polynomial P_n in ascending order, by Newton
// iteration on the three-term recurrence.
std::vector<double> gauss_legendre_nodes(int n);

// Top eigenvalue of the j_max = 1 operator B1(0, 0, t1, t2):
// (2/3) sqrt(1 + |sin(2 pi t1) sin(2 pi t2)|).
double chsh_two_level_norm(double t1, double t2);

}  // namespace rotorbell::reference

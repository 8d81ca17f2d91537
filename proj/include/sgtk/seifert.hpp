/**
 * Seifert pairing of an embedded band page and page-framed self-linking.
 *
 * V[i][j] = lk(a_i, a_j^+), the push-off taken to the positive side of the
 * page. With C the crossing table and J the intersection form:
 *
 *   V[i][i] = twists[i] + C[i][i]
 *   V[i][j] = (C[i][j] + J[i][j]) / 2        (i != j)
 *
 * Each band crossing contributes one signed crossing between a_i and a_j^+,
 * and interleaved feet add one more inside the disk whose sign flips with the
 * order of the pair. The parity check in RibbonSurface::build makes the
 * division exact, and V - V^T = J holds identically.
 */
#pragma once

#include "sgtk/ribbon.hpp"

namespace sgtk::seifert {

using zlinalg::Int;
using zlinalg::IntMatrix;

struct SeifertMatrix {
    IntMatrix V;
};

SeifertMatrix seifert_matrix(const ribbon::RibbonSurface& f);

/// K^T V K: linking of K with its push-off along the page.
Int page_framing_self_linking(const ribbon::RibbonSurface& f, const ribbon::CurveClass& k);

/// Same pairing against a precomputed matrix.
Int self_linking(const SeifertMatrix& s, std::span<const Int> k);

}  // namespace sgtk::seifert

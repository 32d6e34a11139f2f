#pragma once

#include "tml/mat2z.hpp"

namespace tml {

/// Most specific classification of a unimodular matrix against the
/// stabilizer G_mu of mu = (2,2), the Sanov subgroup E generated by the
/// squared twists, and the parity-pattern group X = Xo ⊔ Xe.
/// G_mu refines into GmuPlus (det +1) and GmuMinus (det -1); both are
/// contained in X, and E is contained in Xo, so the tag order below is
/// from smallest group outward.
enum class GroupTag : int { GmuPlus, GmuMinus, E, Xo, Xe, NotMember };

const char* tag_name(GroupTag t);
GroupTag tag_from_name(std::string_view name);

/// g_n = (1-n, -n; n, 1+n), the n-th power of the positive generator.
Mat2Z make_g(i64 n);
/// f_n = (1-n, 2-n; n, -1+n), a generalized reflection of order 2.
Mat2Z make_f(i64 n);

// Membership predicates. classify() returns the most specific tag; these
// answer the subgroup-membership question directly (a G_mu element is
// also an X member, for instance).
bool in_Gmu(const Mat2Z& m);
bool in_E(const Mat2Z& m);
bool in_Xo(const Mat2Z& m);
bool in_Xe(const Mat2Z& m);
bool in_X(const Mat2Z& m);

/// Requires det = +-1.
GroupTag classify(const Mat2Z& m);

struct DecompositionResult {
    GeneratorWord word;
    bool verified = false; // word re-evaluates to the input matrix
};

/// Normal form in the infinite dihedral group <f0, f1 | f0^2 = e = f1^2>:
/// an alternating, freely reduced word over {F0, F1}.
DecompositionResult decompose_Gmu(const Mat2Z& m);

/// Freely reduced word over the squared-twist letters, recovered by
/// Euclidean reduction on the first column. Letter-exact on members by
/// freeness of the Sanov subgroup.
DecompositionResult decompose_E(const Mat2Z& m);

/// Word over {F0, F1, R1} for any X member, via the parity-case
/// reduction to E followed by the twist/reflection rewriting identities.
DecompositionResult decompose_X(const Mat2Z& m);

struct MaslovDefect {
    MaslovCovector defect;      // mu.M - mu
    bool divisible_by_4 = false;
};

MaslovDefect maslov_defect(const Mat2Z& m, const MaslovCovector& mu = {2, 2});

/// Given nu = 2(m,n) with m, n odd and coprime, produces g in X with
/// (2,2).g = nu. Solves a*n - c*m = 1 and returns (a, c; m-a, n-c), with
/// a normalized into [1, |m|] so that nu = (2,2) yields the identity.
Mat2Z match_maslov(const MaslovCovector& nu);

} // namespace tml

#include "tml/groups.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tml {

namespace {

bool even(i64 x) { return (x & 1) == 0; }
bool odd(i64 x) { return (x & 1) != 0; }

i64 mod4(i64 x) { return ((x % 4) + 4) % 4; }

void require_unimodular(const Mat2Z& m, const char* who) {
    if (!m.unimodular())
        throw std::invalid_argument(std::string(who) + " requires det = +-1, got det = " +
                                    std::to_string(m.det()));
}

// round(p/q) with ties impossible at the call sites (parity argument:
// the reduced entry is odd against an even modulus or vice versa).
i64 nearest_quotient(i64 p, i64 q) {
    const i64 d = p / q;
    const i64 r = p - d * q;
    if (r == 0) return d;
    const i64 cand[2] = {d, d + (((p < 0) == (q < 0)) ? 1 : -1)};
    const i64 r0 = std::llabs(p - cand[0] * q);
    const i64 r1 = std::llabs(p - cand[1] * q);
    return r1 < r0 ? cand[1] : cand[0];
}

void append_repeated(GeneratorWord& w, Letter l, i64 count) {
    for (i64 i = 0; i < count; ++i) w.push_back(l);
}

} // namespace

const char* tag_name(GroupTag t) {
    switch (t) {
        case GroupTag::GmuPlus: return "GmuPlus";
        case GroupTag::GmuMinus: return "GmuMinus";
        case GroupTag::E: return "E";
        case GroupTag::Xo: return "Xo";
        case GroupTag::Xe: return "Xe";
        case GroupTag::NotMember: return "NotMember";
    }
    throw std::logic_error("unknown tag");
}

GroupTag tag_from_name(std::string_view name) {
    for (GroupTag t : {GroupTag::GmuPlus, GroupTag::GmuMinus, GroupTag::E, GroupTag::Xo,
                       GroupTag::Xe, GroupTag::NotMember})
        if (name == tag_name(t)) return t;
    throw std::invalid_argument("unknown group tag: " + std::string(name));
}

Mat2Z make_g(i64 n) {
    return {checked_sub(1, n), checked_sub(0, n), n, checked_add(1, n)};
}

Mat2Z make_f(i64 n) {
    return {checked_sub(1, n), checked_sub(2, n), n, checked_add(-1, n)};
}

bool in_Gmu(const Mat2Z& m) {
    if (!m.unimodular()) return false;
    const MaslovCovector mu{2, 2};
    return mu.acted_by(m) == mu;
}

bool in_Xo(const Mat2Z& m) {
    return m.unimodular() && odd(m.a11) && odd(m.a22) && even(m.a12) && even(m.a21);
}

bool in_Xe(const Mat2Z& m) {
    return m.unimodular() && even(m.a11) && even(m.a22) && odd(m.a12) && odd(m.a21);
}

bool in_X(const Mat2Z& m) { return in_Xo(m) || in_Xe(m); }

bool in_E(const Mat2Z& m) {
    // diagonal 1 mod 4, off-diagonal even; this forces det = 1
    return m.unimodular() && mod4(m.a11) == 1 && mod4(m.a22) == 1 && even(m.a12) && even(m.a21);
}

GroupTag classify(const Mat2Z& m) {
    require_unimodular(m, "classify");
    if (in_Gmu(m)) return m.det() == 1 ? GroupTag::GmuPlus : GroupTag::GmuMinus;
    if (in_E(m)) return GroupTag::E;
    if (in_Xo(m)) return GroupTag::Xo;
    if (in_Xe(m)) return GroupTag::Xe;
    return GroupTag::NotMember;
}

DecompositionResult decompose_Gmu(const Mat2Z& m) {
    if (!in_Gmu(m))
        throw std::invalid_argument("decompose_Gmu: matrix does not stabilize (2,2)");
    const i64 n = m.a21; // g_n and f_n both carry n in the lower-left entry
    GeneratorWord w;
    if (n >= 0) {
        for (i64 i = 0; i < n; ++i) {
            w.push_back(Letter::F1);
            w.push_back(Letter::F0);
        }
    } else {
        for (i64 i = 0; i < -n; ++i) {
            w.push_back(Letter::F0);
            w.push_back(Letter::F1);
        }
    }
    if (m.det() == -1) w.push_back(Letter::F0); // f_n = g_n f0
    w = free_reduce(w);
    return {w, word_eval(w) == m};
}

DecompositionResult decompose_E(const Mat2Z& m) {
    if (!in_E(m))
        throw std::invalid_argument("decompose_E: matrix is not in the squared-twist pattern");
    GeneratorWord prefix;
    Mat2Z cur = m;
    i64 measure = checked_add(std::llabs(cur.a11), std::llabs(cur.a21));
    while (cur.a21 != 0) {
        if (std::llabs(cur.a11) > std::llabs(cur.a21)) {
            // left-multiply by tau1^{2k}: a11 <- a11 + 2k a21
            const i64 k = nearest_quotient(-cur.a11, 2 * cur.a21);
            cur = mat_mul(Mat2Z{1, 2 * k, 0, 1}, cur);
            append_repeated(prefix, k > 0 ? Letter::T1M2 : Letter::T1P2, std::llabs(k));
        } else {
            // left-multiply by tau2^{2k}: a21 <- a21 - 2k a11
            const i64 k = nearest_quotient(cur.a21, 2 * cur.a11);
            cur = mat_mul(Mat2Z{1, 0, -2 * k, 1}, cur);
            append_repeated(prefix, k > 0 ? Letter::T2M2 : Letter::T2P2, std::llabs(k));
        }
        const i64 next = checked_add(std::llabs(cur.a11), std::llabs(cur.a21));
        if (next >= measure)
            throw std::runtime_error(
                "decompose_E: reduction measure failed to decrease (please report; "
                "this contradicts freeness of the squared-twist subgroup)");
        measure = next;
    }
    // cur = (1, 2s; 0, 1): the mod-4 pattern and det = 1 force the diagonal
    if (cur.a11 != 1 || cur.a22 != 1)
        throw std::runtime_error("decompose_E: unexpected terminal matrix " + cur.to_text());
    const i64 s = cur.a12 / 2;
    GeneratorWord w = prefix;
    append_repeated(w, s > 0 ? Letter::T1P2 : Letter::T1M2, std::llabs(s));
    return {w, word_eval(w) == m};
}

namespace {

// Prop-style rewriting of twist and R2 letters over {F0, F1, R1}.
void append_rewritten(GeneratorWord& out, Letter l) {
    switch (l) {
        case Letter::T1P2: // tau1^2 = r2 f0 = f1 r1 f1 f0
            out.insert(out.end(), {Letter::F1, Letter::R1, Letter::F1, Letter::F0});
            break;
        case Letter::T1M2: // inverse of the above (all letters involutive)
            out.insert(out.end(), {Letter::F0, Letter::F1, Letter::R1, Letter::F1});
            break;
        case Letter::T2P2: // tau2^2 = f1 f0 f1 r1
            out.insert(out.end(), {Letter::F1, Letter::F0, Letter::F1, Letter::R1});
            break;
        case Letter::T2M2:
            out.insert(out.end(), {Letter::R1, Letter::F1, Letter::F0, Letter::F1});
            break;
        case Letter::R2: // r2 = f1 r1 f1
            out.insert(out.end(), {Letter::F1, Letter::R1, Letter::F1});
            break;
        default:
            out.push_back(l);
    }
}

} // namespace

DecompositionResult decompose_X(const Mat2Z& m) {
    if (!in_X(m))
        throw std::invalid_argument("decompose_X: matrix is not in the parity pattern of X");
    GeneratorWord inv_prefix; // letters whose product times the E part recovers m
    Mat2Z cur = m;
    if (in_Xe(cur)) {
        cur = mat_mul(letter_matrix(Letter::F1), cur);
        inv_prefix.push_back(Letter::F1);
    }
    // cur = (1+2p, 2s; 2r, 1+2q); kill the odd parities of (p, q)
    const i64 p = (cur.a11 - 1) / 2;
    const i64 q = (cur.a22 - 1) / 2;
    if (odd(p)) {
        cur = mat_mul(letter_matrix(Letter::R1), cur);
        inv_prefix.push_back(Letter::R1);
    }
    if (odd(q)) {
        cur = mat_mul(letter_matrix(Letter::R2), cur);
        inv_prefix.push_back(Letter::R2);
    }
    DecompositionResult core = decompose_E(cur);
    GeneratorWord w;
    for (Letter l : inv_prefix) append_rewritten(w, l); // involutions: inverse = itself
    for (Letter l : core.word) append_rewritten(w, l);
    w = free_reduce(w);
    return {w, word_eval(w) == m};
}

MaslovDefect maslov_defect(const Mat2Z& m, const MaslovCovector& mu) {
    require_unimodular(m, "maslov_defect");
    const MaslovCovector d = mu.acted_by(m).minus(mu);
    return {d, mod4(d.m1) == 0 && mod4(d.m2) == 0};
}

Mat2Z match_maslov(const MaslovCovector& nu) {
    if (mod4(nu.m1) != 2 || mod4(nu.m2) != 2)
        throw std::invalid_argument("match_maslov: nu must be congruent to (2,2) mod 4");
    if (std::gcd(nu.m1, nu.m2) != 2)
        throw std::invalid_argument("match_maslov: nu must have divisibility exactly 2");
    const i64 m = nu.m1 / 2, n = nu.m2 / 2; // both odd, coprime
    // extended Euclid for a*n - c*m = 1
    i64 r0 = n, r1 = m, x0 = 1, x1 = 0;
    while (r1 != 0) {
        const i64 qt = r0 / r1;
        r0 -= qt * r1;
        std::swap(r0, r1);
        x0 -= qt * x1;
        std::swap(x0, x1);
    }
    i64 a0 = (r0 > 0) ? x0 : -x0; // a0*n = gcd (+-1) mod m
    const i64 mm = std::llabs(m);
    i64 a = ((a0 % mm) + mm) % mm;
    if (a == 0) a = mm; // representative in [1, |m|]; nu = (2,2) then yields I
    const i64 c = (checked_mul(a, n) - 1) / m;
    return {a, c, checked_sub(m, a), checked_sub(n, c)};
}

} // namespace tml

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tml {

using i64 = std::int64_t;

/// 2x2 integer matrix, row-major. All arithmetic is exact and
/// overflow-checked; group operations additionally require det = +-1.
struct Mat2Z {
    i64 a11 = 1, a12 = 0;
    i64 a21 = 0, a22 = 1;

    static Mat2Z identity() { return {1, 0, 0, 1}; }

    /// Determinant, overflow-checked.
    i64 det() const;
    bool unimodular() const;

    /// Text form "a11,a12,a21,a22" used by the CLI and JSON reports.
    std::string to_text() const;
    static Mat2Z from_text(std::string_view text);

    friend bool operator==(const Mat2Z&, const Mat2Z&) = default;
};

/// Exact product. Throws std::overflow_error if any entry overflows.
Mat2Z mat_mul(const Mat2Z& a, const Mat2Z& b);

/// Inverse via the adjugate. Requires det = +-1.
Mat2Z mat_inv(const Mat2Z& a);

Mat2Z mat_neg(const Mat2Z& a);

/// Generator alphabet. F0, F1 are the generalized reflections of the
/// Maslov stabilizer, R1/R2 the axis reflections, T*2 the squared Dehn
/// twists (T1P2 = first twist squared, T1M2 its inverse, and so on).
enum class Letter : int { F0, F1, R1, R2, T1P2, T1M2, T2P2, T2M2 };

using GeneratorWord = std::vector<Letter>;

Mat2Z letter_matrix(Letter l);
Letter letter_inverse(Letter l);
const char* letter_name(Letter l);
Letter letter_from_name(std::string_view name);

/// Left-to-right product of the letter matrices; empty word is identity.
Mat2Z word_eval(const GeneratorWord& w);

/// Maps each letter to its inverse and reverses the order, so that
/// word_eval(w ++ reverse_inverse(w)) is the identity.
GeneratorWord reverse_inverse(const GeneratorWord& w);

/// Cancels adjacent inverse pairs until none remain.
GeneratorWord free_reduce(const GeneratorWord& w);

std::string word_to_text(const GeneratorWord& w);
GeneratorWord word_from_text(std::string_view text);

/// Class in H1 of the torus over the basis {gamma1, gamma2}, as a column.
struct H1Class {
    i64 n1 = 0, n2 = 0;
    friend bool operator==(const H1Class&, const H1Class&) = default;
};

/// Integer row vector; houses Maslov classes and their pullbacks.
struct MaslovCovector {
    i64 m1 = 0, m2 = 0;

    /// Row vector times matrix (pullback along the matrix).
    MaslovCovector acted_by(const Mat2Z& m) const;
    MaslovCovector minus(const MaslovCovector& o) const;

    friend bool operator==(const MaslovCovector&, const MaslovCovector&) = default;
};

/// Checked scalar helpers shared by the exact routines.
i64 checked_add(i64 a, i64 b);
i64 checked_sub(i64 a, i64 b);
i64 checked_mul(i64 a, i64 b);

} // namespace tml

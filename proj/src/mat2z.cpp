#include "tml/mat2z.hpp"

#include <array>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace tml {

i64 checked_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in add");
    return r;
}

i64 checked_sub(i64 a, i64 b) {
    i64 r;
    if (__builtin_sub_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in sub");
    return r;
}

i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in mul");
    return r;
}

i64 Mat2Z::det() const {
    return checked_sub(checked_mul(a11, a22), checked_mul(a12, a21));
}

bool Mat2Z::unimodular() const {
    const i64 d = det();
    return d == 1 || d == -1;
}

std::string Mat2Z::to_text() const {
    std::ostringstream os;
    os << a11 << ',' << a12 << ',' << a21 << ',' << a22;
    return os.str();
}

Mat2Z Mat2Z::from_text(std::string_view text) {
    std::array<i64, 4> v{};
    size_t pos = 0;
    for (int i = 0; i < 4; ++i) {
        size_t comma = text.find(',', pos);
        std::string_view tok =
            text.substr(pos, comma == std::string_view::npos ? comma : comma - pos);
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v[i]);
        if (ec != std::errc{} || p != tok.data() + tok.size())
            throw std::invalid_argument("matrix text must be four integers a11,a12,a21,a22");
        if (i < 3) {
            if (comma == std::string_view::npos)
                throw std::invalid_argument("matrix text must be four integers a11,a12,a21,a22");
            pos = comma + 1;
        } else if (comma != std::string_view::npos) {
            throw std::invalid_argument("matrix text must be four integers a11,a12,a21,a22");
        }
    }
    return {v[0], v[1], v[2], v[3]};
}

Mat2Z mat_mul(const Mat2Z& a, const Mat2Z& b) {
    return {checked_add(checked_mul(a.a11, b.a11), checked_mul(a.a12, b.a21)),
            checked_add(checked_mul(a.a11, b.a12), checked_mul(a.a12, b.a22)),
            checked_add(checked_mul(a.a21, b.a11), checked_mul(a.a22, b.a21)),
            checked_add(checked_mul(a.a21, b.a12), checked_mul(a.a22, b.a22))};
}

Mat2Z mat_inv(const Mat2Z& a) {
    const i64 d = a.det();
    if (d != 1 && d != -1)
        throw std::invalid_argument("mat_inv requires det = +-1, got det = " + std::to_string(d));
    // adjugate divided by det; for d = -1 this negates the adjugate
    return {d * a.a22, d * -a.a12, d * -a.a21, d * a.a11};
}

Mat2Z mat_neg(const Mat2Z& a) {
    return {-a.a11, -a.a12, -a.a21, -a.a22};
}

Mat2Z letter_matrix(Letter l) {
    switch (l) {
        case Letter::F0: return {1, 2, 0, -1};
        case Letter::F1: return {0, 1, 1, 0};
        case Letter::R1: return {-1, 0, 0, 1};
        case Letter::R2: return {1, 0, 0, -1};
        case Letter::T1P2: return {1, 2, 0, 1};
        case Letter::T1M2: return {1, -2, 0, 1};
        case Letter::T2P2: return {1, 0, -2, 1};
        case Letter::T2M2: return {1, 0, 2, 1};
    }
    throw std::logic_error("unknown letter");
}

Letter letter_inverse(Letter l) {
    switch (l) {
        case Letter::F0:
        case Letter::F1:
        case Letter::R1:
        case Letter::R2: return l; // involutions
        case Letter::T1P2: return Letter::T1M2;
        case Letter::T1M2: return Letter::T1P2;
        case Letter::T2P2: return Letter::T2M2;
        case Letter::T2M2: return Letter::T2P2;
    }
    throw std::logic_error("unknown letter");
}

const char* letter_name(Letter l) {
    switch (l) {
        case Letter::F0: return "F0";
        case Letter::F1: return "F1";
        case Letter::R1: return "R1";
        case Letter::R2: return "R2";
        case Letter::T1P2: return "T1P2";
        case Letter::T1M2: return "T1M2";
        case Letter::T2P2: return "T2P2";
        case Letter::T2M2: return "T2M2";
    }
    throw std::logic_error("unknown letter");
}

Letter letter_from_name(std::string_view name) {
    static constexpr std::array<Letter, 8> all = {
        Letter::F0,   Letter::F1,   Letter::R1,   Letter::R2,
        Letter::T1P2, Letter::T1M2, Letter::T2P2, Letter::T2M2};
    for (Letter l : all)
        if (name == letter_name(l)) return l;
    throw std::invalid_argument("unknown generator letter: " + std::string(name));
}

Mat2Z word_eval(const GeneratorWord& w) {
    Mat2Z m = Mat2Z::identity();
    for (Letter l : w) m = mat_mul(m, letter_matrix(l));
    return m;
}

GeneratorWord reverse_inverse(const GeneratorWord& w) {
    GeneratorWord r;
    r.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(letter_inverse(*it));
    return r;
}

GeneratorWord free_reduce(const GeneratorWord& w) {
    GeneratorWord out;
    out.reserve(w.size());
    for (Letter l : w) {
        if (!out.empty() && out.back() == letter_inverse(l))
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

std::string word_to_text(const GeneratorWord& w) {
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += ' ';
        s += letter_name(w[i]);
    }
    return s;
}

GeneratorWord word_from_text(std::string_view text) {
    GeneratorWord w;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t sp = text.find(' ', pos);
        if (sp == std::string_view::npos) sp = text.size();
        if (sp > pos) w.push_back(letter_from_name(text.substr(pos, sp - pos)));
        pos = sp + 1;
    }
    return w;
}

MaslovCovector MaslovCovector::acted_by(const Mat2Z& m) const {
    return {checked_add(checked_mul(m1, m.a11), checked_mul(m2, m.a21)),
            checked_add(checked_mul(m1, m.a12), checked_mul(m2, m.a22))};
}

MaslovCovector MaslovCovector::minus(const MaslovCovector& o) const {
    return {checked_sub(m1, o.m1), checked_sub(m2, o.m2)};
}

} // namespace tml

#include "tml/mat2z.hpp"

#include <doctest.h>

#include <random>
#include <stdexcept>

using namespace tml;

namespace {

// random word over the full alphabet; evaluates to a det = +-1 matrix
GeneratorWord random_word(std::mt19937_64& rng, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> pick(0, 7);
    GeneratorWord w(len(rng));
    for (Letter& l : w) l = static_cast<Letter>(pick(rng));
    return w;
}

} // namespace

TEST_CASE("mat_mul matches hand products") {
    const Mat2Z id = Mat2Z::identity();
    const Mat2Z m{7, -3, 2, 5};
    CHECK(mat_mul(id, m) == m);
    CHECK(mat_mul(m, id) == m);

    CHECK(mat_mul(Mat2Z{0, 1, 1, 0}, Mat2Z{1, 2, 0, -1}) == Mat2Z{0, -1, 1, 2});
    CHECK(mat_mul(Mat2Z{1, 2, 0, 1}, Mat2Z{1, 0, -2, 1}) == Mat2Z{-3, 2, -2, 1});
}

TEST_CASE("mat_inv uses the adjugate and rejects non-unimodular input") {
    CHECK(mat_inv(Mat2Z::identity()) == Mat2Z::identity());
    const Mat2Z f0{1, 2, 0, -1};
    CHECK(mat_inv(f0) == f0); // an involution
    CHECK(mat_inv(Mat2Z{2, 1, -1, 0}) == Mat2Z{0, -1, 1, 2});

    CHECK_THROWS_AS(mat_inv(Mat2Z{2, 0, 0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(mat_inv(Mat2Z{1, 1, 1, 1}), std::invalid_argument);
}

TEST_CASE("overflow is detected, never wrapped") {
    const i64 big = i64{1} << 40;
    const Mat2Z huge{big, big, big, big};
    CHECK_THROWS_AS(mat_mul(huge, huge), std::overflow_error);
    CHECK_THROWS_AS(huge.det(), std::overflow_error);
    CHECK_THROWS_AS(checked_mul(big, big * 16), std::overflow_error);
}

TEST_CASE("word evaluation: empty word, letter values, homomorphism") {
    CHECK(word_eval({}) == Mat2Z::identity());
    CHECK(word_eval({Letter::F1, Letter::F0}) == Mat2Z{0, -1, 1, 2}); // g_1
    CHECK(word_eval({Letter::R2, Letter::F0}) == Mat2Z{1, 2, 0, 1});  // tau1^2

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const GeneratorWord w1 = random_word(rng, 6);
        const GeneratorWord w2 = random_word(rng, 6);
        GeneratorWord cat = w1;
        cat.insert(cat.end(), w2.begin(), w2.end());
        CHECK(word_eval(cat) == mat_mul(word_eval(w1), word_eval(w2)));
    }
}

TEST_CASE("word inverse and determinant multiplicativity") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const GeneratorWord w = random_word(rng, 10);
        const Mat2Z m = word_eval(w);
        CHECK(m.unimodular());

        GeneratorWord cancel = w;
        const GeneratorWord ri = reverse_inverse(w);
        cancel.insert(cancel.end(), ri.begin(), ri.end());
        CHECK(word_eval(cancel) == Mat2Z::identity());
        CHECK(free_reduce(cancel).empty());

        const GeneratorWord w2 = random_word(rng, 10);
        const Mat2Z m2 = word_eval(w2);
        CHECK(mat_mul(m, m2).det() == m.det() * m2.det());
        CHECK(mat_mul(m, mat_inv(m)) == Mat2Z::identity());
    }
}

TEST_CASE("matrix and word text round-trips") {
    const Mat2Z m{0, -1, 1, 2};
    CHECK(m.to_text() == "0,-1,1,2");
    CHECK(Mat2Z::from_text("0,-1,1,2") == m);
    CHECK_THROWS_AS(Mat2Z::from_text("1,2,3"), std::invalid_argument);
    CHECK_THROWS_AS(Mat2Z::from_text("1,2,3,x"), std::invalid_argument);
    CHECK_THROWS_AS(Mat2Z::from_text("1,2,3,4,5"), std::invalid_argument);

    const GeneratorWord w{Letter::F0, Letter::T1M2, Letter::R1};
    CHECK(word_to_text(w) == "F0 T1M2 R1");
    CHECK(word_from_text("F0 T1M2 R1") == w);
    CHECK_THROWS_AS(word_from_text("F3"), std::invalid_argument);
}

TEST_CASE("covector action is the row-vector product") {
    const MaslovCovector mu{2, 2};
    CHECK(mu.acted_by(Mat2Z{1, 2, 0, 1}) == MaslovCovector{2, 6});
    CHECK(mu.acted_by(Mat2Z{-1, 0, 0, 1}) == MaslovCovector{-2, 2});
}

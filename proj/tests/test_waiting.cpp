#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "entroute/rng.hpp"
#include "entroute/waiting.hpp"

using namespace entroute;

namespace {

/// The worked two-link, two-request example:
///   link 1 takes (1, 2) slots, link 2 takes (3, 1).
GenerationMatrix example_matrix() {
    GenerationMatrix m(2, 2);
    m.set(0, 0, 1);
    m.set(0, 1, 2);
    m.set(1, 0, 3);
    m.set(1, 1, 1);
    return m;
}

GenerationMatrix ones(int links, int requests) {
    return GenerationMatrix(links, requests); // constructor fills with 1
}

RealMatrix random_real(std::size_t rows, std::size_t cols, RngStream& rng) {
    RealMatrix m(rows, cols);
    for (double& v : m.data) {
        v = (rng.next_unit() - 0.5) * 20.0;
    }
    return m;
}

} // namespace

TEST_CASE("worked example: opportunistic recursion") {
    const GenerationMatrix m = example_matrix();
    // Hand evaluation: W_11 = 1, W_21 = 3, W_22 = max(1+2, 3+1) = 4.
    CHECK(waiting_time_opportunistic(m) == 4);
}

TEST_CASE("worked example: non-opportunistic sum of maxima") {
    const GenerationMatrix m = example_matrix();
    CHECK(waiting_time_nonopportunistic(m) == 5); // max(1,3) + max(2,1)
}

TEST_CASE("worked example: degree-2 opportunism") {
    const GenerationMatrix m = example_matrix();
    CHECK(waiting_time_k_opportunistic(m, 2) == 5);
}

TEST_CASE("worked example: search depth zero") {
    const GenerationMatrix m = example_matrix();
    CHECK(waiting_time_search_depth(m, 0) == 4); // max(1+2, 3+1)
}

TEST_CASE("worked example: spectrum with its shared middle value") {
    const GenerationMatrix m = example_matrix();
    const auto spectrum = waiting_time_spectrum(m);
    CHECK(spectrum == std::vector<std::int64_t>{4, 4, 4, 4, 5});
}

TEST_CASE("single request: opportunism degrees coincide") {
    RngStream rng(11);
    const GenerationMatrix m = sample_generation_matrix(4, 1, 0.4, rng);
    std::int64_t max_entry = 0;
    for (int i = 0; i < 4; ++i) {
        max_entry = std::max(max_entry, m.at(i, 0));
    }
    CHECK(waiting_time_opportunistic(m) == max_entry);
    CHECK(waiting_time_nonopportunistic(m) == max_entry);
    CHECK(waiting_time_k_opportunistic(m, 3) == max_entry);
}

TEST_CASE("all-ones matrix pipelines one request per slot") {
    const GenerationMatrix m = ones(3, 7);
    CHECK(waiting_time_opportunistic(m) == 7);
    CHECK(waiting_time_nonopportunistic(m) == 7);
    const auto spectrum = waiting_time_spectrum(ones(3, 2));
    CHECK(spectrum.size() == 7);
    for (std::int64_t v : spectrum) {
        CHECK(v == 2);
    }
}

TEST_CASE("degree and depth boundaries reduce to the named quantities") {
    RngStream rng(313);
    for (int round = 0; round < 200; ++round) {
        const int links = 1 + static_cast<int>(rng.next_below(6));
        const int requests = 1 + static_cast<int>(rng.next_below(6));
        const double p = 0.1 + 0.8 * rng.next_unit();
        const GenerationMatrix m = sample_generation_matrix(links, requests, p, rng);

        CHECK(waiting_time_k_opportunistic(m, 1) == waiting_time_opportunistic(m));
        CHECK(waiting_time_k_opportunistic(m, links) == waiting_time_nonopportunistic(m));
        CHECK(waiting_time_search_depth(m, links) == waiting_time_opportunistic(m));

        std::int64_t per_link_sum_max = 0;
        for (int i = 0; i < links; ++i) {
            std::int64_t sum = 0;
            for (int j = 0; j < requests; ++j) {
                sum += m.at(i, j);
            }
            per_link_sum_max = std::max(per_link_sum_max, sum);
        }
        CHECK(waiting_time_search_depth(m, 0) == per_link_sum_max);
        // The lower bound never exceeds the opportunistic waiting time.
        CHECK(per_link_sum_max <= waiting_time_opportunistic(m));
    }
}

TEST_CASE("spectrum is non-decreasing on random matrices") {
    RngStream rng(99);
    for (int round = 0; round < 2000; ++round) {
        const int links = 1 + static_cast<int>(rng.next_below(8));
        const int requests = 1 + static_cast<int>(rng.next_below(8));
        const double p = 0.1 + 0.8 * rng.next_unit();
        const GenerationMatrix m = sample_generation_matrix(links, requests, p, rng);
        const auto spectrum = waiting_time_spectrum(m);
        REQUIRE(spectrum.size() == 2 * static_cast<std::size_t>(links) + 1);
        CHECK(std::is_sorted(spectrum.begin(), spectrum.end()));
        CHECK(spectrum[links] == spectrum[links + 1]); // shared middle value
    }
}

TEST_CASE("sampling: p = 1 gives the all-ones matrix") {
    RngStream rng(5);
    const GenerationMatrix m = sample_generation_matrix(3, 4, 1.0, rng);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 4; ++j) {
            CHECK(m.at(i, j) == 1);
        }
    }
}

TEST_CASE("sampling: empirical mean approaches 1/p") {
    RngStream rng(17);
    const int draws = 100000;
    double sum = 0.0;
    for (int i = 0; i < draws; ++i) {
        sum += static_cast<double>(rng.geometric(0.25));
    }
    const double mean = sum / draws;
    CHECK(mean == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("sampling is deterministic per seed") {
    RngStream a(123, 7);
    RngStream b(123, 7);
    const GenerationMatrix first = sample_generation_matrix(4, 5, 0.3, a);
    const GenerationMatrix second = sample_generation_matrix(4, 5, 0.3, b);
    CHECK(first == second);
    RngStream c(123, 8);
    const GenerationMatrix third = sample_generation_matrix(4, 5, 0.3, c);
    CHECK(first != third);
}

TEST_CASE("matrix norm: zero matrix maps to zero and nonzero to positive") {
    const RealMatrix zero(4, 3);
    for (int depth = 0; depth <= 3; ++depth) {
        for (int degree = 1; degree <= 3; ++degree) {
            CHECK(matrix_norm(zero, depth, degree) == 0.0);
        }
    }
    RngStream rng(23);
    for (int round = 0; round < 100; ++round) {
        RealMatrix m = random_real(3, 4, rng);
        m.at(1, 2) = 1.0; // guarantee non-zero
        for (int depth = 0; depth <= 4; ++depth) {
            for (int degree = 1; degree <= 4; ++degree) {
                CHECK(matrix_norm(m, depth, degree) > 0.0);
            }
        }
    }
}

TEST_CASE("matrix norm: absolute homogeneity") {
    RngStream rng(29);
    for (int round = 0; round < 500; ++round) {
        const std::size_t rows = 1 + rng.next_below(5);
        const std::size_t cols = 1 + rng.next_below(5);
        const RealMatrix m = random_real(rows, cols, rng);
        const double alpha = (rng.next_unit() - 0.5) * 8.0;
        RealMatrix scaled = m;
        for (double& v : scaled.data) {
            v *= alpha;
        }
        const int depth = static_cast<int>(rng.next_below(cols + 1));
        const int degree = 1 + static_cast<int>(rng.next_below(cols));
        const double lhs = matrix_norm(scaled, depth, degree);
        const double rhs = std::abs(alpha) * matrix_norm(m, depth, degree);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("matrix norm: triangle inequality") {
    RngStream rng(31);
    for (int round = 0; round < 500; ++round) {
        const std::size_t rows = 1 + rng.next_below(5);
        const std::size_t cols = 1 + rng.next_below(5);
        const RealMatrix c = random_real(rows, cols, rng);
        const RealMatrix d = random_real(rows, cols, rng);
        RealMatrix sum = c;
        for (std::size_t i = 0; i < sum.data.size(); ++i) {
            sum.data[i] += d.data[i];
        }
        const int depth = static_cast<int>(rng.next_below(cols + 1));
        const int degree = 1 + static_cast<int>(rng.next_below(cols));
        const double lhs = matrix_norm(sum, depth, degree);
        const double rhs = matrix_norm(c, depth, degree) + matrix_norm(d, depth, degree);
        CHECK(lhs <= rhs + 1e-9 * std::max(1.0, rhs));
    }
}

TEST_CASE("matrix norm at full depth, degree one reproduces the recursion") {
    const GenerationMatrix t = example_matrix();
    const RealMatrix d = to_request_major(t);
    CHECK(matrix_norm(d, 2, 1) == doctest::Approx(4.0));

    RngStream rng(37);
    for (int round = 0; round < 300; ++round) {
        const int links = 1 + static_cast<int>(rng.next_below(6));
        const int requests = 1 + static_cast<int>(rng.next_below(6));
        const GenerationMatrix m = sample_generation_matrix(links, requests, 0.5, rng);
        const RealMatrix real = to_request_major(m);
        CHECK(matrix_norm(real, links, 1) ==
              doctest::Approx(static_cast<double>(waiting_time_opportunistic(m))));
        // Either family member matches its dedicated evaluator.
        const int depth = static_cast<int>(rng.next_below(links + 1));
        CHECK(matrix_norm(real, depth, 1) ==
              doctest::Approx(static_cast<double>(waiting_time_search_depth(m, depth))));
        const int degree = 1 + static_cast<int>(rng.next_below(links));
        CHECK(matrix_norm(real, links, degree) ==
              doctest::Approx(static_cast<double>(waiting_time_k_opportunistic(m, degree))));
    }
}

TEST_CASE("argument validation") {
    const GenerationMatrix m = example_matrix();
    CHECK_THROWS_AS(waiting_time_k_opportunistic(m, 0), std::domain_error);
    CHECK_THROWS_AS(waiting_time_k_opportunistic(m, 3), std::domain_error);
    CHECK_THROWS_AS(waiting_time_search_depth(m, -1), std::domain_error);
    CHECK_THROWS_AS(waiting_time_search_depth(m, 3), std::domain_error);
    CHECK_THROWS_AS(GenerationMatrix(0, 1), std::invalid_argument);
    const RealMatrix real(2, 2);
    CHECK_THROWS_AS(matrix_norm(real, 3, 1), std::domain_error);
    CHECK_THROWS_AS(matrix_norm(real, 0, 0), std::domain_error);
}

#include "entroute/waiting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entroute {

GenerationMatrix::GenerationMatrix(int links, int requests)
    : links_(links), requests_(requests) {
    if (links < 1 || requests < 1) {
        throw std::invalid_argument("generation matrix needs at least one link and one request");
    }
    cells_.assign(static_cast<std::size_t>(links) * requests, 1);
}

void GenerationMatrix::set(int link, int request, std::int64_t value) {
    if (value < 1) {
        throw std::invalid_argument("generation times are at least one slot");
    }
    cells_[static_cast<std::size_t>(link) * requests_ + request] = value;
}

GenerationMatrix sample_generation_matrix(int links, int requests, double p, RngStream& rng) {
    GenerationMatrix m(links, requests);
    for (int i = 0; i < links; ++i) {
        for (int j = 0; j < requests; ++j) {
            m.set(i, j, rng.geometric(p));
        }
    }
    return m;
}

std::int64_t waiting_time_opportunistic(const GenerationMatrix& times) {
    return waiting_time_k_opportunistic(times, 1);
}

std::int64_t waiting_time_nonopportunistic(const GenerationMatrix& times) {
    std::int64_t total = 0;
    for (int j = 0; j < times.requests(); ++j) {
        std::int64_t column_max = 0;
        for (int i = 0; i < times.links(); ++i) {
            column_max = std::max(column_max, times.at(i, j));
        }
        total += column_max;
    }
    return total;
}

std::int64_t waiting_time_k_opportunistic(const GenerationMatrix& times, int degree) {
    const int m = times.links();
    const int n = times.requests();
    if (degree < 1 || degree > m) {
        throw std::domain_error("opportunism degree must be in 1..M");
    }
    // Window for row i (1-based) is 1..min(i+degree-1, M): a prefix, so one
    // running-max sweep per request suffices.
    std::vector<std::int64_t> previous(m, 0);
    std::vector<std::int64_t> current(m, 0);
    std::vector<std::int64_t> prefix(m, 0);
    for (int j = 0; j < n; ++j) {
        std::int64_t running = 0;
        for (int i = 0; i < m; ++i) {
            running = std::max(running, previous[i] + times.at(i, j));
            prefix[i] = running;
        }
        for (int i = 0; i < m; ++i) {
            current[i] = prefix[std::min(i + degree - 1, m - 1)];
        }
        previous.swap(current);
    }
    return previous[m - 1];
}

std::int64_t waiting_time_search_depth(const GenerationMatrix& times, int depth) {
    const int m = times.links();
    const int n = times.requests();
    if (depth < 0 || depth > m) {
        throw std::domain_error("search depth must be in 0..M");
    }
    // Window for row i (1-based) is max(1, i-depth)..i.
    std::vector<std::int64_t> previous(m, 0);
    std::vector<std::int64_t> current(m, 0);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < m; ++i) {
            std::int64_t best = 0;
            const int low = std::max(0, i - depth);
            for (int k = low; k <= i; ++k) {
                best = std::max(best, previous[k] + times.at(k, j));
            }
            current[i] = best;
        }
        previous.swap(current);
    }
    std::int64_t result = 0;
    for (int i = 0; i < m; ++i) {
        result = std::max(result, previous[i]);
    }
    return result;
}

std::vector<std::int64_t> waiting_time_spectrum(const GenerationMatrix& times) {
    const int m = times.links();
    std::vector<std::int64_t> values;
    values.reserve(2 * static_cast<std::size_t>(m) + 1);
    for (int depth = 0; depth <= m; ++depth) {
        values.push_back(waiting_time_search_depth(times, depth));
    }
    for (int degree = 1; degree <= m; ++degree) {
        values.push_back(waiting_time_k_opportunistic(times, degree));
    }
    return values;
}

double matrix_norm(const RealMatrix& matrix, int depth, int degree) {
    const int m = static_cast<int>(matrix.cols);
    if (matrix.rows == 0 || matrix.cols == 0) {
        throw std::invalid_argument("matrix norm needs a non-empty matrix");
    }
    if (depth < 0 || depth > m) {
        throw std::domain_error("search depth must be in 0..M");
    }
    if (degree < 1 || degree > m) {
        throw std::domain_error("opportunism degree must be in 1..M");
    }
    std::vector<double> accumulated(matrix.cols, 0.0);
    std::vector<double> next(matrix.cols, 0.0);
    for (std::size_t r = 0; r < matrix.rows; ++r) {
        for (int i = 0; i < m; ++i) {
            const int low = std::max(0, i - depth);
            const int high = std::min(i + degree - 1, m - 1);
            double best = 0.0;
            for (int j = low; j <= high; ++j) {
                best = std::max(best, std::abs(accumulated[j]) + std::abs(matrix.at(r, j)));
            }
            next[i] = best;
        }
        accumulated.swap(next);
    }
    double norm = 0.0;
    for (double v : accumulated) {
        norm = std::max(norm, std::abs(v));
    }
    return norm;
}

RealMatrix to_request_major(const GenerationMatrix& times) {
    RealMatrix d(static_cast<std::size_t>(times.requests()), static_cast<std::size_t>(times.links()));
    for (int j = 0; j < times.requests(); ++j) {
        for (int i = 0; i < times.links(); ++i) {
            d.at(j, i) = static_cast<double>(times.at(i, j));
        }
    }
    return d;
}

} // namespace entroute

#ifndef ENTROUTE_WAITING_HPP
#define ENTROUTE_WAITING_HPP

#include <cstdint>
#include <vector>

#include "entroute/rng.hpp"

namespace entroute {

/// Generation times T[i][j] for link i (0-based, M links) and request j
/// (0-based, N requests), in slots. Entry (i, j) is how long the i-th link
/// took to regenerate for the j-th request after being consumed for the
/// (j-1)-th one. Row j of the request-major matrix D used in the norm
/// machinery is column j here.
class GenerationMatrix {
public:
    GenerationMatrix(int links, int requests);

    int links() const { return links_; }
    int requests() const { return requests_; }

    std::int64_t at(int link, int request) const {
        return cells_[static_cast<std::size_t>(link) * requests_ + request];
    }
    void set(int link, int request, std::int64_t value);

    bool operator==(const GenerationMatrix& other) const = default;

private:
    int links_;
    int requests_;
    std::vector<std::int64_t> cells_;
};

/// I.i.d. geometric(p) entries on support {1, 2, ...}. Draw order is
/// link-major (all requests of link 0, then link 1, ...), so a fixed
/// (seed, stream) reproduces the matrix bit-exactly.
GenerationMatrix sample_generation_matrix(int links, int requests, double p, RngStream& rng);

/// Total waiting time of the last request when every request moves forward
/// as soon as the next link ahead of it is ready (1-opportunistic, zero
/// swap time, infinite lifetimes).
std::int64_t waiting_time_opportunistic(const GenerationMatrix& times);

/// Total waiting time when each request waits for all links of the path to
/// be simultaneously ready: sum over requests of the per-request maximum.
std::int64_t waiting_time_nonopportunistic(const GenerationMatrix& times);

/// Waiting time under opportunism degree k (window of k consecutive ready
/// links required to move). degree = 1 reduces to the opportunistic time,
/// degree = M to the non-opportunistic one.
std::int64_t waiting_time_k_opportunistic(const GenerationMatrix& times, int degree);

/// The search-depth family bounding the opportunistic time from below.
/// depth = 0 gives the per-link column-sum maximum, depth = M gives the
/// opportunistic waiting time itself.
std::int64_t waiting_time_search_depth(const GenerationMatrix& times, int depth);

/// The full ordered family of 2M+1 waiting-time values:
/// indices 0..M hold the search-depth values (depth 0..M), indices
/// M+1..2M hold the opportunism-degree values (degree 1..M). The list is
/// non-decreasing and entries M and M+1 are always equal.
std::vector<std::int64_t> waiting_time_spectrum(const GenerationMatrix& times);

/// Dense real matrix, row-major (rows = requests, cols = links).
struct RealMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    RealMatrix() = default;
    RealMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
};

/// The waiting-time-induced matrix norm with search depth `depth` (0..M)
/// and opportunism degree `degree` (1..M): fold the rows through the
/// windowed-max accumulator and take the max-absolute entry of the result.
/// For nonnegative integer matrices, depth = M, degree = 1 reproduces
/// waiting_time_opportunistic of the transposed matrix.
double matrix_norm(const RealMatrix& matrix, int depth, int degree);

/// Request-major view of a generation matrix (rows = requests), the shape
/// matrix_norm expects.
RealMatrix to_request_major(const GenerationMatrix& times);

} // namespace entroute

#endif // ENTROUTE_WAITING_HPP

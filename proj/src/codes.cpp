#include "lprx/codes.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <stdexcept>
#include <utility>

#include "lprx/rng.hpp"

namespace lprx {

namespace {

// Dense GF(2) rows as 64-bit words, enough for the n <= 2^10 codes built here.
struct Gf2Matrix {
    int cols = 0;
    int words = 0;
    std::vector<std::vector<std::uint64_t>> rows;

    explicit Gf2Matrix(int num_cols) : cols(num_cols), words((num_cols + 63) / 64) {}

    void add_row(const std::vector<int>& support) {
        rows.emplace_back(words, 0);
        for (int j : support) rows.back()[j / 64] ^= 1ULL << (j % 64);
    }
    static bool get(const std::vector<std::uint64_t>& row, int j) {
        return (row[j / 64] >> (j % 64)) & 1ULL;
    }
    static void xor_into(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src) {
        for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
    }
};

int gf2_rank(const ParityCheckMatrix& matrix) {
    Gf2Matrix work(matrix.num_bits());
    for (int i = 0; i < matrix.num_checks(); ++i) work.add_row(matrix.neighbors(i));
    int rank = 0;
    for (int col = 0; col < work.cols && rank < static_cast<int>(work.rows.size()); ++col) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(work.rows.size()); ++r) {
            if (Gf2Matrix::get(work.rows[r], col)) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(work.rows[rank], work.rows[pivot]);
        for (int r = 0; r < static_cast<int>(work.rows.size()); ++r) {
            if (r != rank && Gf2Matrix::get(work.rows[r], col)) {
                Gf2Matrix::xor_into(work.rows[r], work.rows[rank]);
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace

ParityCheckMatrix::ParityCheckMatrix(int num_checks, int num_bits,
                                     const std::vector<std::pair<int, int>>& entries)
    : num_bits_(num_bits), rows_(num_checks) {
    if (num_checks < 0 || num_bits < 0) {
        throw std::invalid_argument("ParityCheckMatrix: negative dimensions");
    }
    for (const auto& [check, bit] : entries) {
        if (check < 0 || check >= num_checks || bit < 0 || bit >= num_bits) {
            throw std::out_of_range("ParityCheckMatrix: entry (" + std::to_string(check) + "," +
                                    std::to_string(bit) + ") out of range");
        }
        rows_[check].push_back(bit);
    }
    for (int i = 0; i < num_checks; ++i) {
        auto& row = rows_[i];
        std::sort(row.begin(), row.end());
        if (std::adjacent_find(row.begin(), row.end()) != row.end()) {
            throw std::invalid_argument("ParityCheckMatrix: duplicate entry in check " +
                                        std::to_string(i));
        }
        if (row.empty()) {
            throw std::invalid_argument("ParityCheckMatrix: check " + std::to_string(i) +
                                        " has no neighbors");
        }
    }
}

std::vector<std::vector<int>> ParityCheckMatrix::bit_neighbors() const {
    std::vector<std::vector<int>> cols(num_bits_);
    for (int i = 0; i < num_checks(); ++i) {
        for (int j : rows_[i]) cols[j].push_back(i);
    }
    return cols;
}

int ParityCheckMatrix::max_check_degree() const {
    int deg = 0;
    for (const auto& row : rows_) deg = std::max(deg, static_cast<int>(row.size()));
    return deg;
}

bool ParityCheckMatrix::is_codeword(const BitVector& c) const {
    if (static_cast<int>(c.size()) != num_bits_) return false;
    for (const auto& row : rows_) {
        int parity = 0;
        for (int j : row) parity ^= c[j] & 1;
        if (parity != 0) return false;
    }
    return true;
}

SystematicEncoder::SystematicEncoder(const ParityCheckMatrix& matrix)
    : num_bits_(matrix.num_bits()) {
    Gf2Matrix work(num_bits_);
    for (int i = 0; i < matrix.num_checks(); ++i) work.add_row(matrix.neighbors(i));

    // Gaussian elimination with column pivoting: scan columns left to right,
    // keep the first unit column found for each remaining row.
    std::vector<char> is_pivot_col(num_bits_, 0);
    int rank = 0;
    for (int col = 0; col < num_bits_ && rank < static_cast<int>(work.rows.size()); ++col) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(work.rows.size()); ++r) {
            if (Gf2Matrix::get(work.rows[r], col)) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(work.rows[rank], work.rows[pivot]);
        for (int r = 0; r < static_cast<int>(work.rows.size()); ++r) {
            if (r != rank && Gf2Matrix::get(work.rows[r], col)) {
                Gf2Matrix::xor_into(work.rows[r], work.rows[rank]);
            }
        }
        pivot_positions_.push_back(col);
        is_pivot_col[col] = 1;
        ++rank;
    }
    rank_ = rank;

    std::vector<int> message_index_of_col(num_bits_, -1);
    for (int j = 0; j < num_bits_; ++j) {
        if (!is_pivot_col[j]) {
            message_index_of_col[j] = static_cast<int>(message_positions_.size());
            message_positions_.push_back(j);
        }
    }
    reduced_rows_.resize(rank_);
    for (int r = 0; r < rank_; ++r) {
        for (int j = 0; j < num_bits_; ++j) {
            if (j != pivot_positions_[r] && Gf2Matrix::get(work.rows[r], j)) {
                reduced_rows_[r].push_back(message_index_of_col[j]);
            }
        }
    }
}

BitVector SystematicEncoder::encode(const BitVector& message) const {
    if (static_cast<int>(message.size()) != dimension()) {
        throw std::invalid_argument("encode: message length " + std::to_string(message.size()) +
                                    " != code dimension " + std::to_string(dimension()));
    }
    BitVector codeword(num_bits_, 0);
    for (int i = 0; i < dimension(); ++i) codeword[message_positions_[i]] = message[i] & 1;
    for (int r = 0; r < rank_; ++r) {
        int parity = 0;
        for (int mi : reduced_rows_[r]) parity ^= message[mi] & 1;
        codeword[pivot_positions_[r]] = static_cast<std::uint8_t>(parity);
    }
    return codeword;
}

BitVector encode(const ParityCheckMatrix& matrix, const BitVector& message) {
    return SystematicEncoder(matrix).encode(message);
}

BitVector GeneratorStructure::encode(const BitVector& message) const {
    if (message.size() != rows.size()) {
        throw std::invalid_argument("GeneratorStructure::encode: message length mismatch");
    }
    BitVector out(length(), 0);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!(message[r] & 1)) continue;
        for (int j = 0; j < length(); ++j) out[j] ^= rows[r][j];
    }
    return out;
}

namespace {

BitVector kronecker_row(int row_index, int length) {
    BitVector row(length, 0);
    for (int j = 0; j < length; ++j) {
        // G2^{(x)n}[i][j] = 1 iff the bits of j are a subset of the bits of i
        row[j] = ((j & row_index) == j) ? 1 : 0;
    }
    return row;
}

std::vector<BitVector> kronecker_rows_with_min_popcount(int log_len, int min_popcount) {
    const int length = 1 << log_len;
    std::vector<BitVector> rows;
    for (int i = 0; i < length; ++i) {
        if (std::popcount(static_cast<unsigned>(i)) >= min_popcount) {
            rows.push_back(kronecker_row(i, length));
        }
    }
    return rows;
}

}  // namespace

RmCode build_rm_code(int order, int log_len) {
    if (log_len < 0 || log_len > 10) {
        throw std::invalid_argument("build_rm_code: log length must be in [0,10]");
    }
    if (order < 0 || order > log_len) {
        throw std::invalid_argument("build_rm_code: order must satisfy 0 <= r <= n");
    }
    const int length = 1 << log_len;

    RmCode code;
    code.generator.kind = GeneratorStructure::Kind::reed_muller;
    code.generator.order = order;
    code.generator.log_len = log_len;
    // weight(row i) = 2^popcount(i), so weight >= 2^(n-r) <=> popcount >= n-r
    code.generator.rows = kronecker_rows_with_min_popcount(log_len, log_len - order);

    // dual of RM(r,n) is RM(n-r-1,n); its generator rows have popcount >= r+1
    std::vector<BitVector> dual_rows = kronecker_rows_with_min_popcount(log_len, order + 1);
    std::vector<std::pair<int, int>> entries;
    for (int i = 0; i < static_cast<int>(dual_rows.size()); ++i) {
        for (int j = 0; j < length; ++j) {
            if (dual_rows[i][j]) entries.emplace_back(i, j);
        }
    }
    code.check = ParityCheckMatrix(static_cast<int>(dual_rows.size()), length, entries);
    return code;
}

namespace {

// Bits with column weight 2 are edges of a multigraph on the checks; a bit
// violates if its two checks coincide (zero column over GF(2)) or if another
// bit joins the same check pair (duplicate column, weight-2 codeword).
std::vector<int> ldpc_violating_bits(const std::vector<std::array<int, 2>>& edges) {
    std::map<std::pair<int, int>, std::vector<int>> by_pair;
    for (int b = 0; b < static_cast<int>(edges.size()); ++b) {
        const auto key = std::minmax(edges[b][0], edges[b][1]);
        by_pair[{key.first, key.second}].push_back(b);
    }
    std::vector<int> bad;
    for (const auto& [key, bits] : by_pair) {
        if (key.first == key.second || bits.size() > 1) {
            bad.insert(bad.end(), bits.begin(), bits.end());
        }
    }
    return bad;
}

}  // namespace

ParityCheckMatrix build_regular_ldpc(int code_length, int dimension, std::uint64_t seed) {
    const int n = code_length;
    const int m = n - dimension;
    if (n < 4 || m < 2 || dimension < 1) {
        throw std::invalid_argument("build_regular_ldpc: need n >= 4 and 2 <= n-k < n");
    }
    const int num_edges = 2 * n;
    std::vector<int> check_degree(m, num_edges / m);
    for (int i = 0; i < num_edges % m; ++i) check_degree[i]++;

    for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
        Rng rng = derive_rng(seed, "ldpc-construct", {attempt});

        std::vector<int> sockets;
        sockets.reserve(num_edges);
        for (int i = 0; i < m; ++i) sockets.insert(sockets.end(), check_degree[i], i);
        for (int i = num_edges - 1; i > 0; --i) {
            const int j = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(i) + 1));
            std::swap(sockets[i], sockets[j]);
        }

        std::vector<std::array<int, 2>> edges(n);
        for (int b = 0; b < n; ++b) edges[b] = {sockets[2 * b], sockets[2 * b + 1]};

        bool clean = false;
        for (int round = 0; round < 400 && !clean; ++round) {
            const std::vector<int> bad = ldpc_violating_bits(edges);
            if (bad.empty()) {
                clean = true;
                break;
            }
            for (int b : bad) {
                const int other = static_cast<int>(rng.uniform_below(n));
                if (other != b) std::swap(edges[b][1], edges[other][1]);
            }
        }
        if (!clean) continue;

        std::vector<std::pair<int, int>> entries;
        entries.reserve(num_edges + 1);
        for (int b = 0; b < n; ++b) {
            entries.emplace_back(edges[b][0], b);
            entries.emplace_back(edges[b][1], b);
        }
        // one extra entry: all-weight-2 columns force sum(rows) = 0, so a
        // single weight-3 column is needed to reach rank n-k
        bool added = false;
        for (int tries = 0; tries < 4 * n && !added; ++tries) {
            const int b = static_cast<int>(rng.uniform_below(n));
            const int c = static_cast<int>(rng.uniform_below(m));
            if (c != edges[b][0] && c != edges[b][1]) {
                entries.emplace_back(c, b);
                added = true;
            }
        }
        if (!added) continue;

        ParityCheckMatrix candidate(m, n, entries);
        if (gf2_rank(candidate) == m) return candidate;
    }
    throw std::runtime_error("build_regular_ldpc: failed to reach full rank; try another seed");
}

Permutation Permutation::inverse() const {
    Permutation inv;
    inv.seed = seed;
    inv.map.resize(map.size());
    for (std::size_t i = 0; i < map.size(); ++i) inv.map[map[i]] = static_cast<int>(i);
    return inv;
}

Permutation build_permutation(std::uint64_t seed, int length) {
    if (length < 1) throw std::invalid_argument("build_permutation: length must be >= 1");
    Permutation perm;
    perm.seed = seed;
    perm.map.resize(length);
    for (int i = 0; i < length; ++i) perm.map[i] = i;
    Rng rng = derive_rng(seed, "permutation", {static_cast<std::uint64_t>(length)});
    for (int i = length - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(i) + 1));
        std::swap(perm.map[i], perm.map[j]);
    }
    return perm;
}

Permutation identity_permutation(int length) {
    Permutation perm;
    perm.map.resize(length);
    for (int i = 0; i < length; ++i) perm.map[i] = i;
    return perm;
}

}  // namespace lprx

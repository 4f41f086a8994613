#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lprx {

// Bits are stored one per byte, each entry 0 or 1.
using BitVector = std::vector<std::uint8_t>;

// Sparse binary parity-check matrix stored as per-check neighborhoods
// (sorted, duplicate-free column indices). Checks and bits are 0-based
// internally; the alist interchange format is 1-based.
class ParityCheckMatrix {
  public:
    ParityCheckMatrix() = default;
    // entries: list of (check, bit) pairs with P_{i,j} = 1.
    ParityCheckMatrix(int num_checks, int num_bits,
                      const std::vector<std::pair<int, int>>& entries);

    int num_checks() const { return static_cast<int>(rows_.size()); }
    int num_bits() const { return num_bits_; }
    const std::vector<int>& neighbors(int check) const { return rows_.at(check); }
    const std::vector<std::vector<int>>& checks() const { return rows_; }
    // Per-bit list of checks (transpose adjacency).
    std::vector<std::vector<int>> bit_neighbors() const;
    int max_check_degree() const;
    bool is_codeword(const BitVector& c) const;

  private:
    int num_bits_ = 0;
    std::vector<std::vector<int>> rows_;
};

// alist interchange format (dimensions, max degrees, per-column then per-row
// adjacency lists, zero-padded). Parse errors name the offending line.
ParityCheckMatrix parse_alist(const std::string& text);
std::string serialize_alist(const ParityCheckMatrix& matrix);
ParityCheckMatrix load_alist_file(const std::string& path);
void save_alist_file(const ParityCheckMatrix& matrix, const std::string& path);

// Systematic encoder obtained by GF(2) Gaussian elimination with column
// pivoting on H. Message bits are placed on the non-pivot (systematic)
// columns; parity bits are solved from the reduced checks. Redundant rows of
// H are tolerated; the code dimension is n - rank(H).
class SystematicEncoder {
  public:
    explicit SystematicEncoder(const ParityCheckMatrix& matrix);

    int code_length() const { return num_bits_; }
    int dimension() const { return static_cast<int>(message_positions_.size()); }
    int rank() const { return rank_; }
    const std::vector<int>& message_positions() const { return message_positions_; }
    BitVector encode(const BitVector& message) const;

  private:
    int num_bits_ = 0;
    int rank_ = 0;
    std::vector<int> pivot_positions_;    // parity columns, one per reduced row
    std::vector<int> message_positions_;  // systematic columns
    // reduced_rows_[r] lists the message positions feeding parity r.
    std::vector<std::vector<int>> reduced_rows_;
};

BitVector encode(const ParityCheckMatrix& matrix, const BitVector& message);

// Generator matrix with provenance. For reed_muller / kronecker_power the
// rows come from the n-fold Kronecker power of [[1,0],[1,1]]; bit_reversal
// reorders rows by the bit-reversed row index (the polar ordering).
struct GeneratorStructure {
    enum class Kind { systematic_from_h, reed_muller, kronecker_power };

    Kind kind = Kind::systematic_from_h;
    int order = 0;    // r for reed_muller
    int log_len = 0;  // n with code length 2^n
    bool bit_reversal = false;
    std::vector<BitVector> rows;

    int dimension() const { return static_cast<int>(rows.size()); }
    int length() const { return rows.empty() ? 0 : static_cast<int>(rows.front().size()); }
    BitVector encode(const BitVector& message) const;
};

struct RmCode {
    GeneratorStructure generator;
    ParityCheckMatrix check;  // rows generate the dual RM(log_len - order - 1, log_len)
};

// RM(r, n): rows of G2^{(x)n} with Hamming weight >= 2^(n-r). Requires
// 0 <= r <= n <= 10.
RmCode build_rm_code(int order, int log_len);

// Pseudo-random parity-check matrix with n - k checks, column weight 2
// (plus a single weight-3 column that breaks the even-row-sum dependency of
// pure weight-2 columns), near-uniform check degrees 2n/(n-k). Construction:
// seeded socket matching, parallel-edge and 4-cycle repair by edge swaps,
// then a rank check with internal reseeding until rank(H) = n - k.
ParityCheckMatrix build_regular_ldpc(int code_length, int dimension, std::uint64_t seed);

// Length-n permutation; out[i] = in[map[i]]. Built by a Fisher-Yates shuffle
// driven by the project RNG, so a (seed, length) pair always gives the same
// mapping.
struct Permutation {
    std::vector<int> map;
    std::uint64_t seed = 0;

    int size() const { return static_cast<int>(map.size()); }
    Permutation inverse() const;

    template <typename T>
    std::vector<T> apply(const std::vector<T>& in) const {
        std::vector<T> out(map.size());
        for (std::size_t i = 0; i < map.size(); ++i) out[i] = in.at(map[i]);
        return out;
    }
};

Permutation build_permutation(std::uint64_t seed, int length);
Permutation identity_permutation(int length);

}  // namespace lprx

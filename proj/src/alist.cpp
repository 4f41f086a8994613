#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lprx/codes.hpp"

namespace lprx {

namespace {

struct AlistScanner {
    std::vector<std::vector<long>> lines;  // integer tokens per non-empty line
    std::vector<int> line_numbers;         // 1-based source line of each entry
    std::size_t cursor = 0;

    explicit AlistScanner(const std::string& text) {
        std::istringstream stream(text);
        std::string line;
        int number = 0;
        while (std::getline(stream, line)) {
            ++number;
            std::istringstream ls(line);
            std::vector<long> tokens;
            std::string tok;
            while (ls >> tok) {
                try {
                    std::size_t used = 0;
                    const long value = std::stol(tok, &used);
                    if (used != tok.size()) throw std::invalid_argument(tok);
                    tokens.push_back(value);
                } catch (const std::exception&) {
                    throw std::runtime_error("alist parse error at line " + std::to_string(number) +
                                             ": non-integer token '" + tok + "'");
                }
            }
            if (!tokens.empty()) {
                lines.push_back(std::move(tokens));
                line_numbers.push_back(number);
            }
        }
    }

    const std::vector<long>& next(const char* what) {
        if (cursor >= lines.size()) {
            throw std::runtime_error(std::string("alist parse error: missing ") + what);
        }
        return lines[cursor++];
    }
    int current_line() const {
        return cursor == 0 ? 1 : line_numbers[std::min(cursor - 1, line_numbers.size() - 1)];
    }
};

}  // namespace

ParityCheckMatrix parse_alist(const std::string& text) {
    AlistScanner scan(text);

    const auto& header = scan.next("header (n m)");
    if (header.size() != 2 || header[0] < 1 || header[1] < 1) {
        throw std::runtime_error("alist parse error at line " + std::to_string(scan.current_line()) +
                                 ": header must be two positive integers (bits, checks)");
    }
    const int n = static_cast<int>(header[0]);
    const int m = static_cast<int>(header[1]);

    const auto& max_degrees = scan.next("max degree line");
    if (max_degrees.size() != 2 || max_degrees[0] < 0 || max_degrees[1] < 0) {
        throw std::runtime_error("alist parse error at line " + std::to_string(scan.current_line()) +
                                 ": expected max bit/check degrees");
    }
    const long max_bit_deg = max_degrees[0];
    const long max_check_deg = max_degrees[1];

    auto read_degree_list = [&](int count, long max_deg, const char* what) {
        std::vector<int> degrees;
        degrees.reserve(count);
        while (static_cast<int>(degrees.size()) < count) {
            const auto& line = scan.next(what);
            for (long v : line) {
                if (v < 0 || v > max_deg) {
                    throw std::runtime_error("alist parse error at line " +
                                             std::to_string(scan.current_line()) + ": degree " +
                                             std::to_string(v) + " outside [0," +
                                             std::to_string(max_deg) + "]");
                }
                degrees.push_back(static_cast<int>(v));
            }
        }
        if (static_cast<int>(degrees.size()) != count) {
            throw std::runtime_error("alist parse error at line " +
                                     std::to_string(scan.current_line()) + ": expected exactly " +
                                     std::to_string(count) + " entries for " + what);
        }
        return degrees;
    };

    const std::vector<int> bit_degrees = read_degree_list(n, max_bit_deg, "bit degree list");
    const std::vector<int> check_degrees = read_degree_list(m, max_check_deg, "check degree list");

    auto read_adjacency = [&](int count, const std::vector<int>& degrees, int index_bound,
                              const char* what) {
        std::vector<std::vector<int>> adj(count);
        for (int i = 0; i < count; ++i) {
            const auto& line = scan.next(what);
            int nonzero = 0;
            for (long v : line) {
                if (v < 0 || v > index_bound) {
                    throw std::runtime_error("alist parse error at line " +
                                             std::to_string(scan.current_line()) + ": index " +
                                             std::to_string(v) + " out of range [1," +
                                             std::to_string(index_bound) + "]");
                }
                if (v != 0) {
                    adj[i].push_back(static_cast<int>(v) - 1);  // alist is 1-based
                    ++nonzero;
                }
            }
            if (nonzero != degrees[i]) {
                throw std::runtime_error("alist parse error at line " +
                                         std::to_string(scan.current_line()) + ": " + what + " " +
                                         std::to_string(i + 1) + " lists " +
                                         std::to_string(nonzero) + " entries, declared degree is " +
                                         std::to_string(degrees[i]));
            }
        }
        return adj;
    };

    const auto per_bit = read_adjacency(n, bit_degrees, m, "bit adjacency");
    const auto per_check = read_adjacency(m, check_degrees, n, "check adjacency");

    std::vector<std::pair<int, int>> entries;
    for (int i = 0; i < m; ++i) {
        for (int j : per_check[i]) entries.emplace_back(i, j);
    }
    ParityCheckMatrix matrix(m, n, entries);

    // cross-check the redundant per-bit lists
    auto cols = matrix.bit_neighbors();
    for (int j = 0; j < n; ++j) {
        std::vector<int> listed = per_bit[j];
        std::sort(listed.begin(), listed.end());
        if (listed != cols[j]) {
            throw std::runtime_error("alist parse error: bit " + std::to_string(j + 1) +
                                     " adjacency disagrees with check adjacency lists");
        }
    }
    return matrix;
}

std::string serialize_alist(const ParityCheckMatrix& matrix) {
    const int n = matrix.num_bits();
    const int m = matrix.num_checks();
    if (n < 1 || m < 1) {
        throw std::invalid_argument("serialize_alist: matrix must have at least one check and bit");
    }
    const auto cols = matrix.bit_neighbors();

    int max_bit_deg = 0;
    for (const auto& c : cols) max_bit_deg = std::max(max_bit_deg, static_cast<int>(c.size()));
    const int max_check_deg = matrix.max_check_degree();

    std::ostringstream out;
    out << n << " " << m << "\n";
    out << max_bit_deg << " " << max_check_deg << "\n";
    for (int j = 0; j < n; ++j) out << cols[j].size() << (j + 1 < n ? " " : "\n");
    for (int i = 0; i < m; ++i) {
        out << matrix.neighbors(i).size() << (i + 1 < m ? " " : "\n");
    }
    auto write_padded = [&out](const std::vector<int>& indices, int width) {
        for (int t = 0; t < width; ++t) {
            if (t > 0) out << " ";
            out << (t < static_cast<int>(indices.size()) ? indices[t] + 1 : 0);
        }
        out << "\n";
    };
    for (int j = 0; j < n; ++j) write_padded(cols[j], max_bit_deg);
    for (int i = 0; i < m; ++i) write_padded(matrix.neighbors(i), max_check_deg);
    return out.str();
}

ParityCheckMatrix load_alist_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open alist file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_alist(buf.str());
}

void save_alist_file(const ParityCheckMatrix& matrix, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write alist file: " + path);
    out << serialize_alist(matrix);
}

}  // namespace lprx

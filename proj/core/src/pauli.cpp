#include "varspec/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace varspec {

namespace {

int letter_index(char l) {
    switch (l) {
        case 'I': return 0;
        case 'X': return 1;
        case 'Y': return 2;
        case 'Z': return 3;
        default: throw std::invalid_argument(std::string("invalid Pauli letter '") + l + "'");
    }
}

constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};

// Single-qubit products P*Q: resulting letter and phase as a power of i.
// X*Y = iZ, Y*Z = iX, Z*X = iY (cyclic, exponent 1); reversed order gives
// exponent 3; P*P = I and products with I carry no phase.
constexpr int kProductLetter[4][4] = {
    {0, 1, 2, 3},
    {1, 0, 3, 2},
    {2, 3, 0, 1},
    {3, 2, 1, 0},
};
constexpr int kProductIPower[4][4] = {
    {0, 0, 0, 0},
    {0, 0, 1, 3},
    {0, 3, 0, 1},
    {0, 1, 3, 0},
};

constexpr cplx kIPower[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

}  // namespace

PauliString::PauliString(std::string letters) : letters_(std::move(letters)) {
    if (letters_.empty()) {
        throw std::invalid_argument("PauliString: need at least one qubit");
    }
    for (char l : letters_) {
        (void)letter_index(l);
    }
}

PauliString PauliString::identity(int n_qubits) {
    return PauliString(std::string(static_cast<std::size_t>(n_qubits), 'I'));
}

bool PauliString::is_identity() const {
    return letters_.find_first_not_of('I') == std::string::npos;
}

std::uint64_t PauliString::support_mask() const {
    const int n = n_qubits();
    std::uint64_t mask = 0;
    for (int q = 0; q < n; ++q) {
        if (letters_[static_cast<std::size_t>(q)] != 'I') {
            mask |= 1ULL << (n - 1 - q);
        }
    }
    return mask;
}

std::uint64_t PauliString::flip_mask() const {
    const int n = n_qubits();
    std::uint64_t mask = 0;
    for (int q = 0; q < n; ++q) {
        const char l = letters_[static_cast<std::size_t>(q)];
        if (l == 'X' || l == 'Y') {
            mask |= 1ULL << (n - 1 - q);
        }
    }
    return mask;
}

cplx PauliString::phase_on_basis(std::uint64_t c) const {
    // P|c> = phase(c) |c ^ flip_mask()>; Y contributes i on |0>, -i on |1>,
    // Z contributes (-1)^bit, X and I contribute 1.
    const int n = n_qubits();
    int ipow = 0;   // phase = i^ipow * (-1)^neg
    int neg = 0;
    for (int q = 0; q < n; ++q) {
        const bool bit = (c >> (n - 1 - q)) & 1;
        switch (letters_[static_cast<std::size_t>(q)]) {
            case 'Y':
                ipow += 1;
                if (bit) neg ^= 1;
                break;
            case 'Z':
                if (bit) neg ^= 1;
                break;
            default: break;
        }
    }
    return kIPower[(ipow + 2 * neg) % 4];
}

Eigen::MatrixXcd PauliString::to_matrix() const {
    const int n = n_qubits();
    const std::int64_t dim = std::int64_t{1} << n;
    const std::uint64_t flip = flip_mask();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::int64_t c = 0; c < dim; ++c) {
        m(static_cast<std::int64_t>(static_cast<std::uint64_t>(c) ^ flip), c) =
            phase_on_basis(static_cast<std::uint64_t>(c));
    }
    return m;
}

StringProduct multiply_strings(const PauliString& p, const PauliString& q) {
    if (p.n_qubits() != q.n_qubits()) {
        throw std::invalid_argument("multiply_strings: qubit counts differ");
    }
    const int n = p.n_qubits();
    std::string out(static_cast<std::size_t>(n), 'I');
    int ipow = 0;
    for (int q_i = 0; q_i < n; ++q_i) {
        const int a = letter_index(p.letter(q_i));
        const int b = letter_index(q.letter(q_i));
        out[static_cast<std::size_t>(q_i)] = kLetters[kProductLetter[a][b]];
        ipow += kProductIPower[a][b];
    }
    return {kIPower[ipow % 4], PauliString(std::move(out))};
}

PauliSum::PauliSum(int n_qubits, std::vector<PauliTerm> terms) : n_qubits_(n_qubits) {
    if (n_qubits_ < 1) {
        throw std::invalid_argument("PauliSum: need at least one qubit");
    }
    std::map<std::string, cplx> merged;
    for (auto& t : terms) {
        if (t.string.n_qubits() != n_qubits_) {
            throw std::invalid_argument("PauliSum: term qubit count mismatch");
        }
        merged[t.string.letters()] += t.coeff;
    }
    terms_.reserve(merged.size());
    for (auto& [letters, coeff] : merged) {
        if (std::abs(coeff) >= kDropTol) {
            terms_.push_back({coeff, PauliString(letters)});
        }
    }
}

cplx PauliSum::identity_coefficient() const {
    for (const auto& t : terms_) {
        if (t.string.is_identity()) {
            return t.coeff;
        }
    }
    return {0.0, 0.0};
}

bool PauliSum::is_real(double tol) const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [tol](const PauliTerm& t) { return std::abs(t.coeff.imag()) < tol; });
}

Eigen::MatrixXcd PauliSum::to_matrix() const {
    const std::int64_t dim = std::int64_t{1} << n_qubits_;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& t : terms_) {
        const std::uint64_t flip = t.string.flip_mask();
        for (std::int64_t c = 0; c < dim; ++c) {
            const auto cc = static_cast<std::uint64_t>(c);
            m(static_cast<std::int64_t>(cc ^ flip), c) += t.coeff * t.string.phase_on_basis(cc);
        }
    }
    return m;
}

DenseHermitian PauliSum::to_hermitian() const {
    return DenseHermitian(to_matrix());
}

PauliSum square(const PauliSum& h) {
    if (!h.is_real()) {
        throw std::invalid_argument("square: coefficients must be real");
    }
    std::vector<PauliTerm> out;
    out.reserve(h.size() * h.size());
    for (const auto& a : h.terms()) {
        for (const auto& b : h.terms()) {
            auto [phase, r] = multiply_strings(a.string, b.string);
            out.push_back({a.coeff * b.coeff * phase, std::move(r)});
        }
    }
    return PauliSum(h.n_qubits(), std::move(out));
}

namespace {

// Strips '#' comments and concatenates payload into one token stream.
std::string strip_comments(std::istream& in) {
    std::string body, line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        body += line;
        body += '\n';
    }
    return body;
}

}  // namespace

PauliSum read_pauli_sum(std::istream& in) {
    std::istringstream tokens(strip_comments(in));
    std::vector<PauliTerm> terms;
    std::string coeff_tok, letters;
    while (tokens >> coeff_tok) {
        char* end = nullptr;
        const double coeff = std::strtod(coeff_tok.c_str(), &end);
        if (end == coeff_tok.c_str() || *end != '\0') {
            throw std::runtime_error("read_pauli_sum: bad coefficient '" + coeff_tok + "'");
        }
        if (!(tokens >> letters)) {
            throw std::runtime_error("read_pauli_sum: coefficient without Pauli letters");
        }
        terms.push_back({cplx{coeff, 0.0}, PauliString(letters)});
    }
    if (terms.empty()) {
        throw std::runtime_error("read_pauli_sum: no terms found");
    }
    return PauliSum(terms.front().string.n_qubits(), std::move(terms));
}

PauliSum read_pauli_sum_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open Pauli-sum file: " + path);
    }
    return read_pauli_sum(in);
}

void write_pauli_sum(std::ostream& out, const PauliSum& h, const std::string& header) {
    out << header;
    for (const auto& t : h.terms()) {
        if (std::abs(t.coeff.imag()) >= 1e-12) {
            throw std::invalid_argument("write_pauli_sum: non-real coefficient");
        }
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", t.coeff.real());
        out << buf << " " << t.string.letters() << "\n";
    }
}

void write_pauli_sum_file(const std::string& path, const PauliSum& h, const std::string& header) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write Pauli-sum file: " + path);
    }
    write_pauli_sum(out, h, header);
}

}  // namespace varspec

#include "varspec/dense.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace varspec {

DenseHermitian::DenseHermitian(Eigen::MatrixXcd m) : mat_(std::move(m)) {
    if (mat_.rows() < 1 || mat_.rows() != mat_.cols()) {
        throw std::invalid_argument("DenseHermitian: matrix must be square with dim >= 1");
    }
    const double dev = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
    if (dev >= kHermiticityTol) {
        std::ostringstream msg;
        msg << "DenseHermitian: matrix is not Hermitian (max |H - H^dag| = " << dev << ")";
        throw std::invalid_argument(msg.str());
    }
}

double DenseHermitian::max_abs_entry() const {
    return mat_.cwiseAbs().maxCoeff();
}

cplx parse_complex(const std::string& token) {
    const char* s = token.c_str();
    char* end = nullptr;
    const double re = std::strtod(s, &end);
    if (end == s) {
        throw std::invalid_argument("parse_complex: bad entry '" + token + "'");
    }
    if (*end == '\0') {
        return {re, 0.0};  // bare real
    }
    const char* imag_start = end;
    if (*imag_start != '+' && *imag_start != '-') {
        throw std::invalid_argument("parse_complex: bad entry '" + token + "'");
    }
    const double im = std::strtod(imag_start, &end);
    if (end == imag_start || *end != 'i' || *(end + 1) != '\0') {
        throw std::invalid_argument("parse_complex: bad entry '" + token + "'");
    }
    return {re, im};
}

std::string format_complex(cplx z) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", z.real(), z.imag());
    return buf;
}

namespace {

// Pulls the next payload line, skipping blanks and '#' comments.
bool next_payload_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        const auto pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#') {
            continue;
        }
        return true;
    }
    return false;
}

}  // namespace

DenseHermitian read_matrix(std::istream& in) {
    std::string line;
    if (!next_payload_line(in, line)) {
        throw std::runtime_error("read_matrix: missing dimension line");
    }
    int dim = 0;
    {
        std::istringstream ls(line);
        if (!(ls >> dim) || dim < 1) {
            throw std::runtime_error("read_matrix: bad dimension line '" + line + "'");
        }
    }
    Eigen::MatrixXcd m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        if (!next_payload_line(in, line)) {
            throw std::runtime_error("read_matrix: truncated matrix body");
        }
        std::istringstream ls(line);
        std::string token;
        for (int c = 0; c < dim; ++c) {
            if (!(ls >> token)) {
                throw std::runtime_error("read_matrix: short row " + std::to_string(r));
            }
            m(r, c) = parse_complex(token);
        }
    }
    return DenseHermitian(std::move(m));
}

DenseHermitian read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open matrix file: " + path);
    }
    return read_matrix(in);
}

void write_matrix(std::ostream& out, const DenseHermitian& h, const std::string& header) {
    out << header;
    out << h.dim() << "\n";
    for (int r = 0; r < h.dim(); ++r) {
        for (int c = 0; c < h.dim(); ++c) {
            if (c) out << " ";
            out << format_complex(h(r, c));
        }
        out << "\n";
    }
}

void write_matrix_file(const std::string& path, const DenseHermitian& h,
                       const std::string& header) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write matrix file: " + path);
    }
    write_matrix(out, h, header);
}

}  // namespace varspec

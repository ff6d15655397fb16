#pragma once

#include <Eigen/Dense>
#include <complex>
#include <iosfwd>
#include <string>

namespace varspec {

using cplx = std::complex<double>;

// Dense Hermitian matrix, the exact-matrix form of a Hamiltonian. Construction
// validates squareness and Hermiticity (max |H - H^dag| < 1e-10), so a value
// of this type can be handed to the encoder or the eigensolver untested.
class DenseHermitian {
  public:
    static constexpr double kHermiticityTol = 1e-10;

    explicit DenseHermitian(Eigen::MatrixXcd m);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return mat_; }
    cplx operator()(int r, int c) const { return mat_(r, c); }

    // Largest |entry|, used for padding-penalty heuristics.
    double max_abs_entry() const;

  private:
    Eigen::MatrixXcd mat_;
};

// Text format: first line `dim`, then dim rows of dim whitespace-separated
// complex entries written as `a+bi`. Lines starting with '#' and blank lines
// are skipped on read; writers use '#' lines to echo the run configuration.
DenseHermitian read_matrix(std::istream& in);
DenseHermitian read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const DenseHermitian& h, const std::string& header = "");
void write_matrix_file(const std::string& path, const DenseHermitian& h,
                       const std::string& header = "");

// Parses one `a+bi` token (also accepts a bare real like `-1.5`).
cplx parse_complex(const std::string& token);
std::string format_complex(cplx z);

}  // namespace varspec

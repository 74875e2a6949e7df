#include "btg/harness/examples.hpp"

#include <cmath>
#include <stdexcept>

namespace btg::harness {

namespace {

Complex rat(long num, long den) { return Complex(double(num) / double(den), 0.0); }

Matrix mat3(std::initializer_list<Complex> entries) {
  Matrix m(3, 3);
  auto it = entries.begin();
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j) m(i, j) = *it++;
  return m;
}

Matrix col3(Complex a, Complex b, Complex c) {
  Matrix v(3, 1);
  v << a, b, c;
  return v;
}

BuiltinExample example_one() {
  BuiltinExample ex;
  ex.name = "builtin-example-1";
  ex.A = mat3({rat(7, 8), rat(-5, 8), rat(5, 8),
               rat(-5, 8), rat(7, 8), rat(5, 8),
               rat(0, 1), rat(0, 1), rat(3, 2)});
  ex.M_inv = Matrix::Identity(3, 3);
  ex.B = mat3({rat(5, 8), rat(-3, 8), rat(-1, 8),
               rat(-3, 8), rat(5, 8), rat(-1, 8),
               rat(-1, 8), rat(-1, 8), rat(7, 24)});
  ex.nc = 1;
  // Right/left generalized eigenvectors for eigenvalues (1/4, 3/2, 3/2).
  ex.v_r = mat3({rat(1, 1), rat(0, 1), rat(1, 1),
                 rat(1, 1), rat(1, 1), rat(0, 1),
                 rat(0, 1), rat(1, 1), rat(1, 1)});
  ex.v_l = mat3({rat(-1, 1), rat(-1, 1), rat(0, 1),
                 rat(-1, 1), rat(1, 1), rat(0, 1),
                 rat(1, 1), rat(0, 1), rat(1, 1)});
  ex.d_admissible = mat3({rat(2, 1), rat(0, 1), rat(0, 1),
                          rat(0, 1), rat(2, 1), rat(1, 1),
                          rat(0, 1), rat(1, 1), rat(2, 1)});
  ex.p_sharp = col3(rat(1, 1), rat(1, 1), rat(0, 1));
  ex.r_sharp = col3(rat(-1, 1), rat(-1, 1), rat(1, 1));
  ex.golden_pi = mat3({rat(1, 2), rat(1, 2), rat(-1, 2),
                       rat(1, 2), rat(1, 2), rat(-1, 2),
                       rat(0, 1), rat(0, 1), rat(0, 1)});
  return ex;
}

BuiltinExample example_two() {
  const double s3 = std::sqrt(3.0);
  BuiltinExample ex;
  ex.name = "builtin-example-2";
  ex.A = mat3({rat(1, 2), rat(0, 1), rat(0, 1),
               rat(0, 1), rat(1, 2), rat(1, 1),
               rat(0, 1), rat(0, 1), rat(1, 2)});
  ex.M_inv = Matrix::Identity(3, 3);
  ex.B = mat3({rat(1, 1), rat(0, 1), rat(0, 1),
               rat(0, 1), rat(1, 1), rat(-2, 1),
               rat(0, 1), rat(-2, 1), rat(6, 1)});
  ex.nc = 1;
  ex.p_hat = col3(Complex(0.0), Complex(1.0 - s3), Complex(1.0));
  ex.golden_m_hat_inv = mat3({rat(3, 4), rat(0, 1), rat(0, 1),
                              rat(0, 1), rat(11, 4), rat(1, 1),
                              rat(0, 1), rat(1, 1), rat(3, 8)});
  RealVector mus(3);
  mus << (2.0 - s3) / 4.0, 3.0 / 4.0, (2.0 + s3) / 4.0;
  ex.golden_mus = mus;
  ex.golden_pi = mat3({Complex(0.0), Complex(0.0), Complex(0.0),
                       Complex(0.0), Complex((3.0 - s3) / 6.0), Complex(-s3 / 3.0),
                       Complex(0.0), Complex(-s3 / 6.0), Complex((3.0 + s3) / 6.0)});
  ex.golden_e_plus_11 = mat3({rat(1, 4), Complex(0.0), Complex(0.0),
                              Complex(0.0), Complex((s3 - 1.0) / 8.0), Complex((3.0 - 2.0 * s3) / 4.0),
                              Complex(0.0), Complex((2.0 * s3 - 3.0) / 24.0), Complex((5.0 - 3.0 * s3) / 8.0)});
  ex.golden_e_south_11 = mat3({rat(1, 4), Complex(0.0), Complex(0.0),
                               Complex(0.0), Complex((3.0 - s3) / 24.0), Complex((s3 - 2.0) / 4.0),
                               Complex(0.0), Complex(s3 / 24.0), Complex((1.0 - s3) / 8.0)});
  ex.golden_e_plus_11_b_norm = 0.25;
  ex.golden_e_south_11_b_norm = 0.25;
  return ex;
}

BuiltinExample example_three() {
  BuiltinExample ex;
  ex.name = "builtin-example-3";
  ex.A = mat3({rat(1, 4), rat(0, 1), rat(1, 12),
               rat(0, 1), rat(1, 2), rat(0, 1),
               rat(0, 1), rat(0, 1), rat(1, 3)});
  ex.M_inv = Matrix::Identity(3, 3);
  ex.B = mat3({rat(4, 1), rat(0, 1), rat(0, 1),
               rat(0, 1), rat(2, 1), rat(1, 1),
               rat(0, 1), rat(1, 1), rat(1, 1)});
  ex.nc = 1;
  ex.v_r = mat3({rat(1, 1), rat(0, 1), rat(1, 1),
                 rat(0, 1), rat(1, 1), rat(0, 1),
                 rat(0, 1), rat(0, 1), rat(1, 1)});
  ex.v_l = mat3({rat(1, 1), rat(0, 1), rat(0, 1),
                 rat(0, 1), rat(1, 1), rat(0, 1),
                 rat(-1, 1), rat(0, 1), rat(1, 1)});
  ex.p_sharp = col3(rat(1, 1), rat(0, 1), rat(0, 1));
  ex.r_sharp = col3(rat(1, 1), rat(0, 1), rat(-1, 1));
  ex.golden_pi = mat3({rat(1, 1), rat(0, 1), rat(-1, 1),
                       rat(0, 1), rat(0, 1), rat(0, 1),
                       rat(0, 1), rat(0, 1), rat(0, 1)});
  ex.golden_e_south_11 = mat3({rat(0, 1), rat(0, 1), rat(4, 9),
                               rat(0, 1), rat(1, 4), rat(0, 1),
                               rat(0, 1), rat(0, 1), rat(4, 9)});
  ex.golden_pi_b_norm = 3.0;
  ex.golden_e_south_11_b_norm = std::sqrt((std::sqrt(1294465.0) + 1217.0) / 1296.0);
  return ex;
}

}  // namespace

BuiltinExample builtin_example(int index) {
  switch (index) {
    case 1:
      return example_one();
    case 2:
      return example_two();
    case 3:
      return example_three();
    default:
      throw std::invalid_argument("builtin_example: index must be 1, 2 or 3");
  }
}

}  // namespace btg::harness

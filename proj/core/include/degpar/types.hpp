#pragma once

#include <complex>

namespace degpar {

using ComplexValue = std::complex<double>;

/// Value with first and second derivative of a real function of one variable.
struct Jet {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

/// Value with first and second derivative of a complex function of one real variable.
struct ComplexJet {
    ComplexValue value{};
    ComplexValue d1{};
    ComplexValue d2{};
};

}  // namespace degpar

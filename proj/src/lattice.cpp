#include "qmc/lattice.hpp"

#include <cmath>
#include <vector>

#include "qmc/errors.hpp"

namespace qmc {

std::size_t fincke_pohst(Eigen::MatrixXd const& gram, double bound, std::function<bool(IntVec const&)> const& visit)
{
    int const n = static_cast<int>(gram.rows());
    // q(i,i) and q(i,j) with x^T G x = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2
    Eigen::MatrixXd q = gram;
    for (int i = 0; i < n; ++i) {
        if (q(i, i) <= 0)
            throw Error(ErrorKind::PreconditionViolation, "fincke_pohst: Gram matrix is not positive definite");
        for (int j = i + 1; j < n; ++j) {
            q(j, i) = q(i, j);
            q(i, j) /= q(i, i);
        }
        for (int k = i + 1; k < n; ++k)
            for (int l = k; l < n; ++l)
                q(k, l) -= q(k, i) * q(i, l);
    }
    double const slack = 1e-9 * std::max(1.0, bound);
    std::vector<double> t(n + 1, 0.0), center(n, 0.0);
    std::vector<long long> x(n, 0), upper(n, 0);
    std::size_t count = 0;

    int i = n - 1;
    t[n - 1] = bound + slack;
    auto setup = [&](int k) {
        double c = 0;
        for (int j = k + 1; j < n; ++j)
            c -= q(k, j) * static_cast<double>(x[j]);
        center[k] = c;
        double r = std::sqrt(std::max(0.0, t[k] / q(k, k)));
        upper[k] = static_cast<long long>(std::floor(c + r));
        x[k] = static_cast<long long>(std::ceil(c - r)) - 1;
    };
    setup(i);
    for (;;) {
        ++x[i];
        if (x[i] > upper[i]) {
            ++i;
            if (i >= n)
                break;
            continue;
        }
        if (i > 0) {
            double d = static_cast<double>(x[i]) - center[i];
            t[i - 1] = t[i] - q(i, i) * d * d;
            --i;
            setup(i);
            continue;
        }
        // leaf: skip zero, and keep one of +-x (first nonzero coordinate from the top positive)
        int top = n - 1;
        while (top >= 0 && x[top] == 0)
            --top;
        if (top < 0 || x[top] < 0)
            continue;
        IntVec v(n);
        for (int k = 0; k < n; ++k)
            v(k) = x[k];
        ++count;
        if (!visit(v))
            break;
    }
    return count;
}

} // namespace qmc

// Compare the QFI density of a heralded squeezed state with the one-axis
// twisting baseline under particle-number and read-out noise.

#include <cstdio>

#include "sqz/sqz.hpp"

int main() {
    using namespace sqz;
    const int n = 100;
    for (double mu : {0.05, 0.1, 0.2}) {
        const OATParameters p{n, mu};
        const auto rule = HeraldRule::ceil_half();
        const auto axis = DirectionPolicy::z_prime();
        const SplitState split = split_state(p);
        const RotationSpec dir = axis.resolve(p);

        const double fixed = avg_qfi_detection(split, n / 2, rule(n / 2), dir, {0.0});
        const double fluct = avg_qfi_number_fluct(p, rule, axis);
        const double noisy = avg_qfi_full(p, rule, axis, {0.49}).density;
        const double oat = qfi_pure(oat_state({n / 2, mu})).fq / (n / 2);
        std::printf("mu=%.2f  fixed N_B=%.3f  binomial N_B=%.3f  +read-out noise=%.3f  OAT(N/2)=%.3f\n", mu, fixed,
                    fluct, noisy, oat);
    }
}

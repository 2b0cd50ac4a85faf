#ifndef SPINDISCORD_FITDATA_HPP
#define SPINDISCORD_FITDATA_HPP

#include <string>
#include <vector>

namespace spindiscord {

struct DecaySample {
    int n = 0;       // distance
    double q = 0.0;  // discord, bits
};

// Discord as a function of inter-spin distance.
struct DecayProfile {
    std::vector<DecaySample> samples;
    std::string provenance;
    bool degenerate_source = false;  // ground-state degeneracy was tie-broken
};

enum class DecayModel { exponential, power_law };

inline const char* decay_model_name(DecayModel m) {
    return m == DecayModel::exponential ? "exponential" : "power_law";
}

// Fit of q(n) = a + b f_c(n), with f = exp(-c n) or n^(-c).
struct FitResult {
    DecayModel model = DecayModel::exponential;
    double a = 0, b = 0, c = 0;
    double sse = 0;
    double aic = 0;
    bool converged = false;
    int iterations = 0;
};

}  // namespace spindiscord

#endif

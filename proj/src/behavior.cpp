#include "tspr/behavior.hpp"

#include <algorithm>
#include <cmath>

#include "tspr/errors.hpp"

namespace tspr {

void TreatmentSpec::validate() const {
    if (delta < 0.0) throw ConfigError("treatment delta must be >= 0");
}

TreatmentPlan TreatmentPlan::none() {
    return TreatmentPlan{TreatmentSpec{0.0, true}, Scope::None, 0};
}

TreatmentPlan TreatmentPlan::treated_group(TreatmentSpec spec) {
    spec.validate();
    return TreatmentPlan{spec, Scope::TreatedGroup, 0};
}

TreatmentPlan TreatmentPlan::all(TreatmentSpec spec) {
    spec.validate();
    return TreatmentPlan{spec, Scope::All, 0};
}

TreatmentPlan TreatmentPlan::first_l(TreatmentSpec spec, int l) {
    spec.validate();
    return TreatmentPlan{spec, Scope::FirstPositions, l};
}

bool TreatmentPlan::applies(const ListingEntry& e) const {
    switch (scope) {
        case Scope::None: return false;
        case Scope::TreatedGroup: return e.group == Group::Treated;
        case Scope::All: return true;
        case Scope::FirstPositions: return e.position <= first_positions;
    }
    return false;
}

double effective_utility(const ListingEntry& e, const TreatmentPlan& plan) {
    return plan.applies(e) ? e.v - plan.spec.delta : e.v;
}

double click_utility(const ListingEntry& e, const TreatmentPlan& plan) {
    return plan.spec.affects_clicks ? effective_utility(e, plan) : e.v;
}

double sigmoid(double x) {
    // split to avoid overflow in exp for large |x|
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double z = std::exp(x);
    return z / (1.0 + z);
}

double click_probability(int position, double v_effective, int prior_clicks,
                         const ClickParams& params) {
    const double pos = static_cast<double>(position);
    return sigmoid(params.b0 + params.b_rank * pos + params.b_rank2 * pos * pos +
                   params.b_v * v_effective + params.b_prior * static_cast<double>(prior_clicks));
}

void simulate_clicks(Listing& listing, const ClickParams& params,
                     const TreatmentPlan& plan, Rng& rng, ScanDirection scan) {
    const std::size_t n = listing.entries.size();
    int prior = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t idx = scan == ScanDirection::TopDown ? k : n - 1 - k;
        ListingEntry& e = listing.entries[idx];
        const double prob = click_probability(e.position, click_utility(e, plan), prior, params);
        e.clicked = draw_bernoulli(rng, prob);
        if (e.clicked) ++prior;
    }
}

namespace {

void book_multinomial(Listing& listing, const BookingParams& params,
                      const TreatmentPlan& plan, Rng& rng) {
    std::vector<std::size_t> clicked;
    std::vector<double> utility;
    for (std::size_t i = 0; i < listing.entries.size(); ++i) {
        if (listing.entries[i].clicked) {
            clicked.push_back(i);
            utility.push_back(params.g_v * effective_utility(listing.entries[i], plan));
        }
    }
    if (clicked.empty()) return;

    double u_max = params.outside_utility;
    for (const double u : utility) u_max = std::max(u_max, u);

    std::vector<double> w(utility.size());
    double total = std::exp(params.outside_utility - u_max);  // outside option
    for (std::size_t i = 0; i < utility.size(); ++i) {
        w[i] = std::exp(utility[i] - u_max);
        total += w[i];
    }

    const double draw = draw_uniform(rng) * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        acc += w[i];
        if (draw < acc) {
            listing.entries[clicked[i]].booked = true;
            return;
        }
    }
    // draw landed in the outside-option mass: no booking
}

void book_independent(Listing& listing, const BookingParams& params,
                      const TreatmentPlan& plan, Rng& rng) {
    for (auto& e : listing.entries) {
        if (!e.clicked) continue;
        const double prob =
            sigmoid(params.g_v * effective_utility(e, plan) - params.outside_utility);
        e.booked = draw_bernoulli(rng, prob);
    }
}

}  // namespace

void simulate_booking(Listing& listing, const BookingParams& params,
                      const TreatmentPlan& plan, Rng& rng, BookingMode mode) {
    if (mode == BookingMode::MultinomialLogit)
        book_multinomial(listing, params, plan, rng);
    else
        book_independent(listing, params, plan, rng);
}

void simulate_query_outcomes(Listing& listing, const BehaviorParams& behavior,
                             const TreatmentPlan& plan, Rng& rng) {
    for (auto& e : listing.entries) {
        e.clicked = false;
        e.booked = false;
        e.y = 0.0;
    }
    simulate_clicks(listing, behavior.click, plan, rng, behavior.scan);
    simulate_booking(listing, behavior.booking, plan, rng, behavior.booking_mode);
    for (auto& e : listing.entries) {
        switch (behavior.outcome) {
            case OutcomeKind::Booking: e.y = e.booked ? 1.0 : 0.0; break;
            case OutcomeKind::ClickCount: e.y = e.clicked ? 1.0 : 0.0; break;
            case OutcomeKind::Revenue: e.y = e.booked ? std::exp(e.v) : 0.0; break;
        }
    }
}

double listing_outcome_total(const Listing& listing) {
    double total = 0.0;
    for (const auto& e : listing.entries) total += e.y;
    return total;
}

}  // namespace tspr

#pragma once

#include "tspr/rng.hpp"
#include "tspr/types.hpp"

namespace tspr {

struct ClickParams {
    double b0 = 0.0;
    double b_rank = 0.0;
    double b_rank2 = 0.0;
    double b_v = 0.0;
    double b_prior = 0.0;
};

struct BookingParams {
    double g_v = 1.0;
    double outside_utility = 0.0;
};

struct TreatmentSpec {
    double delta = 0.0;          // constant utility reduction, >= 0
    bool affects_clicks = true;  // when false the click stage sees raw v
    void validate() const;
};

// Which displayed entries the reduction applies to. TreatedGroup is the
// experiment setting; All/None build the ground-truth extremes and
// FirstPositions drives the proportionality diagnostic.
struct TreatmentPlan {
    enum class Scope { None, TreatedGroup, All, FirstPositions };
    TreatmentSpec spec{};
    Scope scope = Scope::None;
    int first_positions = 0;

    static TreatmentPlan none();
    static TreatmentPlan treated_group(TreatmentSpec spec);
    static TreatmentPlan all(TreatmentSpec spec);
    static TreatmentPlan first_l(TreatmentSpec spec, int l);

    bool applies(const ListingEntry& e) const;
};

// Utility entering the booking stage: v - delta when the plan applies.
double effective_utility(const ListingEntry& e, const TreatmentPlan& plan);
// Utility entering the click stage; equals effective_utility unless
// spec.affects_clicks is off.
double click_utility(const ListingEntry& e, const TreatmentPlan& plan);

double sigmoid(double x);

// sigmoid(b0 + b_rank*pos + b_rank2*pos^2 + b_v*v_eff + b_prior*prior_clicks)
double click_probability(int position, double v_effective, int prior_clicks,
                         const ClickParams& params);

enum class ScanDirection { TopDown, BottomUp };

// Sequential scan; prior_clicks counts clicks already made in scan order.
void simulate_clicks(Listing& listing, const ClickParams& params,
                     const TreatmentPlan& plan, Rng& rng,
                     ScanDirection scan = ScanDirection::TopDown);

// MultinomialLogit: one choice among clicked items plus an outside option
// (at most one booking). IndependentBernoulli: each clicked item books
// independently, the no-interference regime used for estimator validation.
enum class BookingMode { MultinomialLogit, IndependentBernoulli };

void simulate_booking(Listing& listing, const BookingParams& params,
                      const TreatmentPlan& plan, Rng& rng,
                      BookingMode mode = BookingMode::MultinomialLogit);

enum class OutcomeKind { Booking, ClickCount, Revenue };

struct BehaviorParams {
    ClickParams click;
    BookingParams booking;
    ScanDirection scan = ScanDirection::TopDown;
    BookingMode booking_mode = BookingMode::MultinomialLogit;
    OutcomeKind outcome = OutcomeKind::Booking;
};

// Clicks, booking, then per-entry outcomes y according to the outcome kind.
void simulate_query_outcomes(Listing& listing, const BehaviorParams& behavior,
                             const TreatmentPlan& plan, Rng& rng);

// Y_q = sum of entry outcomes.
double listing_outcome_total(const Listing& listing);

}  // namespace tspr

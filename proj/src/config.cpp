#include "tspr/config.hpp"

#include "tspr/errors.hpp"

namespace tspr {

void RunConfig::validate() const {
    if (n_items == 0) throw ConfigError("items must be >= 1");
    if (n_queries == 0) throw ConfigError("queries must be >= 1");
    utility.validate();
    n_q.validate();
    if (sigma < 0.0) throw ConfigError("sigma must be >= 0");
    design.validate();
    if (min_listing_len < 0) throw ConfigError("min_listing_len must be >= 0");
    if (delta && *delta < 0.0) throw ConfigError("delta must be >= 0");
    if (target_drop < 0.0) throw ConfigError("target_drop must be >= 0");
    if (bootstrap_replicates < 0) throw ConfigError("bootstrap replicates must be >= 0");
    if (runs < 1) throw ConfigError("runs must be >= 1");
    if (threads < 0) throw ConfigError("threads must be >= 0");
    if (hist_bins < 1) throw ConfigError("hist_bins must be >= 1");
    if (delta_tol <= 0.0) throw ConfigError("delta_tol must be > 0");
    if (delta_bracket_hi <= delta_bracket_lo || delta_bracket_lo < 0.0)
        throw ConfigError("delta bracket must satisfy 0 <= lo < hi");
}

OutcomeKind outcome_kind_from_string(const std::string& s) {
    if (s == "booking") return OutcomeKind::Booking;
    if (s == "clicks") return OutcomeKind::ClickCount;
    if (s == "revenue") return OutcomeKind::Revenue;
    throw ConfigError("unknown outcome kind: " + s);
}

const char* to_string(OutcomeKind k) {
    switch (k) {
        case OutcomeKind::Booking: return "booking";
        case OutcomeKind::ClickCount: return "clicks";
        case OutcomeKind::Revenue: return "revenue";
    }
    return "?";
}

ScanDirection scan_direction_from_string(const std::string& s) {
    if (s == "top_down") return ScanDirection::TopDown;
    if (s == "bottom_up") return ScanDirection::BottomUp;
    throw ConfigError("unknown scan direction: " + s);
}

BookingMode booking_mode_from_string(const std::string& s) {
    if (s == "logit") return BookingMode::MultinomialLogit;
    if (s == "independent") return BookingMode::IndependentBernoulli;
    throw ConfigError("unknown booking mode: " + s);
}

}  // namespace tspr

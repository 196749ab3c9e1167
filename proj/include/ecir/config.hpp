#pragma once

#include <string>

#include "ecir/mc.hpp"
#include "ecir/model.hpp"
#include "ecir/pricer.hpp"
#include "ecir/riccati.hpp"

namespace ecir {

// Flat key = value configuration with dotted section names and '#' comments.
//
//   model.k, model.sigma          coefficient specs (preset or expression)
//   model.d, model.r0             dimension, short rate at valuation time
//   window.t, window.T            pricing window
//   series.N .q .tol .alpha .beta .max_order .symmetric .split_diagonal .budget
//   mc.paths .steps .seed .scheme (direct-sde | ou-sum) .chunks
//   riccati.h                     RK4 step (0 = (T-t)/1000)
//   riccati.convention            doubled | printed
//   compare.tol_riccati .tol_mc .mc_sigmas
//   output.path .format
struct RunConfig {
    std::string k_spec = "0";
    std::string sigma_spec;
    int d = 1;
    double r0 = 0.0;
    double t = 0.0;
    double T = 0.0;

    SeriesOptions series;
    McConfig mc;

    double riccati_h = 0.0;
    RiccatiConvention riccati_convention = RiccatiConvention::Doubled;

    double compare_tol_riccati = 1e-3;
    double compare_tol_mc = 1e-4;
    double compare_mc_sigmas = 3.0;

    std::string out_path;     // empty = stdout
    std::string format = "csv";

    PricingWindow window() const { return {t, T}; }
    ECIRModel make_model() const;
    // Effective RK4 step: riccati_h, or (T - t)/1000 when unset.
    double riccati_step() const;
};

// Parses and validates; throws ConfigError with the offending line/field.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

}  // namespace ecir

#include "cgb.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#include "core/arith.hpp"
#include "core/characters.hpp"
#include "core/chen.hpp"
#include "core/discrepancy.hpp"
#include "core/fourier.hpp"
#include "core/goldbach.hpp"
#include "core/models.hpp"
#include "core/reports.hpp"
#include "core/sieves.hpp"
#include "json.hpp"

namespace {

thread_local std::string g_last_error;
std::atomic<bool> g_cancel{false};

template <class Fn>
cgb_status guard(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return CGB_OK;
    } catch (const cgb::value_error& e) {
        g_last_error = e.what();
        return CGB_ERR_INVALID_ARGUMENT;
    } catch (const cgb::range_error& e) {
        g_last_error = e.what();
        return CGB_ERR_OUT_OF_RANGE;
    } catch (const cgb::capacity_error& e) {
        g_last_error = e.what();
        return CGB_ERR_CAPACITY;
    } catch (const cgb::interrupted_error& e) {
        g_last_error = e.what();
        return CGB_ERR_INTERRUPTED;
    } catch (const cgb::convergence_error& e) {
        g_last_error = e.what();
        return CGB_ERR_CONVERGENCE;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return CGB_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

cgb::LambdaStarKind parse_kind(const char* kind) {
    std::string k = kind ? kind : "";
    if (k == "lambda") return cgb::LambdaStarKind::lambda;
    if (k == "prime") return cgb::LambdaStarKind::prime_indicator;
    if (k == "e3") return cgb::LambdaStarKind::e3;
    if (k == "rough") return cgb::LambdaStarKind::rough;
    throw cgb::value_error("unknown kind '" + k + "'");
}

}  // namespace

struct cgb_table {
    cgb::FactorTable t;
};

extern "C" {

const char* cgb_status_name(cgb_status s) {
    switch (s) {
        case CGB_OK: return "ok";
        case CGB_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case CGB_ERR_OUT_OF_RANGE: return "out_of_range";
        case CGB_ERR_CAPACITY: return "capacity";
        case CGB_ERR_IO: return "io";
        case CGB_ERR_INTERRUPTED: return "interrupted";
        case CGB_ERR_CONVERGENCE: return "convergence";
        case CGB_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* cgb_last_error(void) { return g_last_error.c_str(); }

void cgb_string_free(char* s) { std::free(s); }

cgb_status cgb_table_build(uint64_t limit, cgb_table** out) {
    return guard([&] {
        if (!out) throw cgb::value_error("null output pointer");
        *out = new cgb_table{cgb::FactorTable::build(limit)};
    });
}

cgb_status cgb_table_save(const cgb_table* t, const char* path) {
    return guard([&] {
        if (!t || !path) throw cgb::value_error("null argument");
        t->t.save(path);
    });
}

cgb_status cgb_table_load(const char* path, cgb_table** out) {
    return guard([&] {
        if (!out || !path) throw cgb::value_error("null argument");
        *out = new cgb_table{cgb::FactorTable::load(path)};
    });
}

void cgb_table_free(cgb_table* t) { delete t; }

uint64_t cgb_table_limit(const cgb_table* t) { return t ? t->t.limit() : 0; }

cgb_status cgb_mult_fn(const cgb_table* t, const char* name, uint64_t n, double* out) {
    return guard([&] {
        if (!t || !name || !out) throw cgb::value_error("null argument");
        *out = t->t.mult_fn(name, n);
    });
}

cgb_status cgb_is_prime(const cgb_table* t, uint64_t n, int* out) {
    return guard([&] {
        if (!t || !out) throw cgb::value_error("null argument");
        *out = t->t.is_prime(n) ? 1 : 0;
    });
}

cgb_status cgb_is_chen_prime(const cgb_table* t, uint64_t p, int* out) {
    return guard([&] {
        if (!t || !out) throw cgb::value_error("null argument");
        *out = cgb::is_chen_prime(p, t->t) ? 1 : 0;
    });
}

cgb_status cgb_ramanujan_sum(uint64_t q, int64_t n, int64_t* out) {
    return guard([&] {
        if (!out) throw cgb::value_error("null argument");
        *out = cgb::ramanujan_sum(q, n);
    });
}

cgb_status cgb_character_count(uint64_t q, uint64_t* out) {
    return guard([&] {
        if (!out) throw cgb::value_error("null argument");
        *out = cgb::characters_mod(q).size();
    });
}

cgb_status cgb_gauss_sum_abs(uint64_t q, uint64_t chi_index, double* out) {
    return guard([&] {
        if (!out) throw cgb::value_error("null argument");
        auto chars = cgb::characters_mod(q);
        if (chi_index >= chars.size()) throw cgb::range_error("character index out of range");
        *out = std::abs(cgb::gauss_sum(chars[chi_index]));
    });
}

cgb_status cgb_exceptional_zero_search(uint64_t P, double kappa, uint64_t grid_budget,
                                       char** json_out) {
    return guard([&] {
        if (!json_out) throw cgb::value_error("null argument");
        cgb::ZeroSearchOptions opts;
        if (grid_budget) {
            opts.initial_grid = static_cast<unsigned>(std::min<uint64_t>(grid_budget, 32));
            opts.max_grid = static_cast<unsigned>(grid_budget);
        }
        auto rep = cgb::exceptional_zero_search(P, kappa, opts);
        *json_out = dup_string(cgb::zero_report_json(rep));
    });
}

cgb_status cgb_gallagher(const cgb_table* t, const char* kind, uint64_t N, uint64_t R,
                         double delta1, uint64_t rough_P, double* value, double* defect) {
    return guard([&] {
        if (!t || !value || !defect) throw cgb::value_error("null argument");
        cgb::GallagherOptions opts;
        opts.rough_P = rough_P ? rough_P : 10;
        cgb::ChenParams cp;
        cp.N = N;
        cp.delta1 = delta1 > 0 ? delta1 : 0.02;
        opts.e3 = cp;
        auto res = cgb::gallagher_discrepancy(parse_kind(kind), N, R, t->t, opts);
        *value = res.value;
        *defect = res.defect;
    });
}

cgb_status cgb_bv(const cgb_table* t, const char* kind, uint64_t N, uint64_t Q, uint64_t P,
                  double delta1, uint64_t rough_P, double* out) {
    return guard([&] {
        if (!t || !out) throw cgb::value_error("null argument");
        cgb::BVOptions opts;
        opts.rough_P = rough_P ? rough_P : 10;
        cgb::ChenParams cp;
        cp.N = N;
        cp.delta1 = delta1 > 0 ? delta1 : 0.02;
        opts.e3 = cp;
        *out = cgb::bv_discrepancy(parse_kind(kind), N, Q, P, t->t, opts);
    });
}

cgb_status cgb_cramer(const cgb_table* t, uint64_t n, uint64_t P, double* out) {
    return guard([&] {
        if (!t || !out) throw cgb::value_error("null argument");
        *out = cgb::cramer(n, P, t->t);
    });
}

cgb_status cgb_fundlem_gap(const cgb_table* t, uint64_t n, uint64_t N, double delta1,
                           double beta, double* out) {
    return guard([&] {
        if (!t || !out) throw cgb::value_error("null argument");
        auto spec = cgb::SieveSpec::desk(N);
        if (delta1 > 0) spec.delta1 = delta1;
        if (beta > 0) spec.beta = beta;
        *out = cgb::fundlem_gap(n, spec, t->t);
    });
}

cgb_status cgb_linear_fF(double s, double* f, double* F) {
    return guard([&] {
        if (!f || !F) throw cgb::value_error("null argument");
        auto v = cgb::linear_fF(s);
        *f = v.f;
        *F = v.F;
    });
}

cgb_status cgb_sieve_audit(const cgb_table* t, uint64_t N, double beta, uint64_t* violations,
                           char** json_out) {
    return guard([&] {
        if (!t || !violations) throw cgb::value_error("null argument");
        auto spec = cgb::SieveSpec::desk(N);
        if (beta > 0) spec.beta = beta;
        auto lower = cgb::presieve_weight(spec, false, t->t);
        auto upper = cgb::presieve_weight(spec, true, t->t);
        const uint64_t P1 = spec.P1_int();
        const double norm = cgb::cramer_norm(P1, t->t);
        // the gap bound is asserted only in the beta = 2 regime; large beta at
        // desk levels sits outside its hypothesis
        const bool gap_check = spec.beta <= 2.0;
        uint64_t bad = 0;
        uint64_t fund_limit = std::min<uint64_t>(N, 100'000);
        for (uint64_t n = 1; n <= N; ++n) {
            double r = t->t.rough_in(n, 2, P1) ? norm : 0.0;
            double lo = cgb::presieve_eval(n, lower, t->t);
            double hi = cgb::presieve_eval(n, upper, t->t);
            if (!(lo <= r + 1e-9 && r <= hi + 1e-9)) ++bad;
            if (gap_check && n <= fund_limit) {
                double gap = cgb::fundlem_gap(n, spec, t->t);
                if (std::abs(lo - r) > gap + 1e-9 || std::abs(hi - r) > gap + 1e-9) ++bad;
            }
        }
        *violations = bad;
        if (json_out) {
            nlohmann::json j;
            j["N"] = N;
            j["beta"] = spec.beta;
            j["P1"] = P1;
            j["violations"] = bad;
            *json_out = dup_string(j.dump(2) + "\n");
        }
    });
}

cgb_status cgb_bump_G(double x, double* out) {
    return guard([&] {
        if (!out) throw cgb::value_error("null argument");
        *out = cgb::bump_G(x);
    });
}

cgb_status cgb_b_R(const cgb_table* t, int64_t n, uint64_t N, uint64_t R, double* out) {
    return guard([&] {
        if (!out) throw cgb::value_error("null argument");
        (void)t;
        *out = cgb::b_R(n, N, R);
    });
}

cgb_status cgb_lambda_Rr(const cgb_table* t, uint64_t n, uint64_t R, uint64_t r, double* out) {
    return guard([&] {
        if (!t || !out) throw cgb::value_error("null argument");
        *out = cgb::lambda_Rr(n, R, r, t->t);
    });
}

cgb_status cgb_H_R(const cgb_table* t, uint64_t n, uint64_t R, double* out) {
    return guard([&] {
        if (!t || !out) throw cgb::value_error("null argument");
        cgb::ModelParams p;
        p.R = R;
        *out = cgb::H_R(n, p, t->t);
    });
}

cgb_status cgb_models_check(const cgb_table* t, uint64_t limit, uint64_t R, uint64_t r,
                            uint64_t* violations) {
    return guard([&] {
        if (!t || !violations) throw cgb::value_error("null argument");
        uint64_t bad = 0;
        for (uint64_t n = 1; n <= limit; ++n) {
            if (t->t.mu(n) == 0 || cgb::gcd_u64(n, r) != 1) continue;
            if (!cgb::hb_upper_check(n, R, r, t->t)) ++bad;
        }
        *violations = bad;
    });
}

cgb_status cgb_chen_constant(double delta1, double tol, double* out) {
    return guard([&] {
        if (!out) throw cgb::value_error("null argument");
        *out = cgb::chen_constant(delta1, tol > 0 ? tol : 1e-9);
    });
}

cgb_status cgb_chen_audit(const cgb_table* t, uint64_t N, double delta1, const char* csv_path,
                          uint64_t* violations) {
    return guard([&] {
        if (!t || !violations) throw cgb::value_error("null argument");
        auto spec = cgb::SieveSpec::desk(N);
        cgb::ChenParams params;
        params.N = N;
        params.delta1 = delta1 > 0 ? delta1 : spec.delta1;
        spec.delta1 = params.delta1;
        auto asm_ = cgb::ChenAssembly::make(spec, params, t->t);
        std::vector<cgb::ChenAssembly::AuditRow> rows;
        uint64_t bad = 0;
        for (uint64_t n = N / 2 + 1; n <= N; ++n) {
            if (!t->t.is_prime(n)) continue;
            auto row = asm_.audit(n, t->t);
            if (!row.pass) ++bad;
            rows.push_back(row);
        }
        *violations = bad;
        if (csv_path) cgb::write_audit_csv(csv_path, rows);
    });
}

cgb_status cgb_singular_series(const cgb_table* t, uint64_t m, uint64_t cutoff, double* value,
                               double* tail_bound) {
    return guard([&] {
        if (!t || !value) throw cgb::value_error("null argument");
        if (cutoff == 0)
            cutoff = std::max<uint64_t>(1000, std::min<uint64_t>(100'000, t->t.limit() - 1));
        auto v = cgb::singular_series(m, cutoff, t->t);
        *value = v.value;
        if (tail_bound) *tail_bound = v.tail_bound;
    });
}

cgb_status cgb_rep_count(const cgb_table* t, uint64_t m, uint64_t* ordered,
                         uint64_t* unordered) {
    return guard([&] {
        if (!t) throw cgb::value_error("null argument");
        if (ordered) *ordered = cgb::rep_count(m, t->t);
        if (unordered) *unordered = cgb::rep_count_unordered(m, t->t);
    });
}

void cgb_request_cancel(void) { g_cancel.store(true); }
void cgb_reset_cancel(void) { g_cancel.store(false); }

void cgb_set_threads(unsigned threads) { cgb::default_thread_count().store(threads); }

cgb_status cgb_scan_details(const cgb_table* t, uint64_t N, const char* csv_path) {
    return guard([&] {
        if (!t || !csv_path) throw cgb::value_error("null argument");
        std::vector<uint64_t> ms;
        for (uint64_t m = 4; m <= N; m += 6) ms.push_back(m);
        cgb::write_rep_csv(csv_path, ms, t->t);
    });
}

cgb_status cgb_scan(const cgb_table* t, uint64_t N, const char* checkpoint_path,
                    char** json_out) {
    return guard([&] {
        if (!t || !json_out) throw cgb::value_error("null argument");
        cgb::ScanOptions opts;
        if (checkpoint_path) opts.checkpoint_path = checkpoint_path;
        opts.cancel = &g_cancel;
        auto rep = cgb::exceptional_scan(N, t->t, opts);
        *json_out = dup_string(cgb::scan_report_json(rep));
    });
}

cgb_status cgb_additive_check(const cgb_table* t, uint64_t m, uint64_t X, uint64_t P1,
                              double D1, double beta, double* lhs, double* main_term,
                              double* ratio) {
    return guard([&] {
        if (!t || !lhs || !main_term || !ratio) throw cgb::value_error("null argument");
        cgb::PresieveConfig cfg;
        if (P1) cfg.P1 = P1;
        if (D1 > 0) cfg.D1 = D1;
        if (beta > 0) cfg.beta = beta;
        cgb::AdditiveCheckContext ctx(cfg, m + 2, t->t);
        auto res = ctx.presieve_additive_check(
            m, X,
            {cgb::SieveSide::upper, cgb::SieveSide::upper, cgb::SieveSide::upper,
             cgb::SieveSide::upper},
            t->t);
        *lhs = res.lhs;
        *main_term = res.main;
        *ratio = res.ratio;
    });
}

cgb_status cgb_exceptional_additive_check(const cgb_table* t, uint64_t m, uint64_t X,
                                          uint64_t r, int which_case, double* sigma1,
                                          double* sigma2, double* s6, double* lhs,
                                          double* predicted) {
    return guard([&] {
        if (!t) throw cgb::value_error("null argument");
        const cgb::DirichletCharacter* chosen = nullptr;
        auto chars = cgb::characters_mod(r);
        for (auto& c : chars)
            if (c.is_real() && c.primitive() && !c.principal()) {
                chosen = &c;
                break;
            }
        if (!chosen) throw cgb::value_error("no real primitive character modulo r");
        cgb::PresieveConfig cfg;
        cgb::AdditiveCheckContext ctx(cfg, m + 2, t->t);
        auto res = ctx.exceptional_additive_check(
            m, X, *chosen, which_case,
            {cgb::SieveSide::upper, cgb::SieveSide::upper, cgb::SieveSide::upper,
             cgb::SieveSide::upper},
            t->t);
        if (res.degenerate) throw cgb::convergence_error("S1 = 0: degenerate configuration");
        if (sigma1) *sigma1 = res.sigma1;
        if (sigma2) *sigma2 = res.sigma2;
        if (s6) *s6 = res.S[5];
        if (lhs) *lhs = res.lhs;
        if (predicted) *predicted = res.predicted;
    });
}

cgb_status cgb_bR_transform_check(uint64_t N, uint64_t R, unsigned samples, uint64_t seed,
                                  double* max_major_dev, double* max_minor) {
    return guard([&] {
        if (!max_major_dev || !max_minor) throw cgb::value_error("null argument");
        auto rep = cgb::bR_transform_check(N, R, samples ? samples : 100, seed);
        *max_major_dev = rep.max_major_deviation;
        *max_minor = rep.max_minor_value;
    });
}

cgb_status cgb_fourier_norms(const cgb_table* t, uint64_t N, uint64_t R, unsigned oversample,
                             double* full, double* defect, double* major_part,
                             double* minor_part) {
    return guard([&] {
        if (!t || !full || !defect || !major_part || !minor_part)
            throw cgb::value_error("null argument");
        cgb::Window w(N);
        for (uint64_t n = w.lo(); n <= N; ++n) w.at(n) = t->t.von_mangoldt(n) - 1.0;
        unsigned ov = oversample ? oversample : 8;
        auto fn = cgb::fourier_norm(w, ov);
        auto arcs = cgb::ArcSet::major_arcs(R ? R : 4, N);
        auto maj = cgb::restricted_norm(w, arcs, cgb::ArcSide::major, ov);
        auto min_ = cgb::restricted_norm(w, arcs, cgb::ArcSide::minor, ov);
        *full = fn.value;
        *defect = fn.defect;
        *major_part = maj.value;
        *minor_part = min_.value;
    });
}

}  // extern "C"

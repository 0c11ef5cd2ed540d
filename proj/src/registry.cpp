#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "cfcs/registry.hpp"

#include "registry_data.inc"

namespace cfcs {

namespace {

unsigned long long fnv1a(const char* s) {
    unsigned long long h = 0xcbf29ce484222325ULL;
    for (; *s; ++s) {
        h ^= static_cast<unsigned char>(*s);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

Rational rat(const std::string& s) {
    Rational r(s);
    r.canonicalize();
    return r;
}

AlgebraicMultiplier parse_multiplier(const std::string& s) {
    AlgebraicMultiplier m;
    if (s.empty()) return m;
    for (const std::string& f : split(s, '*')) {
        size_t caret = f.find('^');
        if (caret == std::string::npos)
            throw RegistryCorrupt("bad multiplier factor '" + f + "'");
        m.factors.emplace_back(rat(f.substr(0, caret)), rat(f.substr(caret + 1)));
    }
    return m;
}

struct Registry {
    std::vector<Table1Row> t1;
    std::vector<Table2Row> t2;
};

const Registry& registry() {
    static const Registry reg = [] {
        if (fnv1a(REGISTRY_DATA) != REGISTRY_CHECKSUM)
            throw RegistryCorrupt("embedded table data failed its checksum");
        Registry r;
        for (const std::string& line : split(REGISTRY_DATA, '\n')) {
            if (line.empty()) continue;
            std::vector<std::string> f = split(line, '|');
            if (f[0] == "T1") {
                if (f.size() != 11) throw RegistryCorrupt("bad T1 record: " + line);
                Table1Row row;
                row.tag = f[1];
                row.N = std::atol(f[2].c_str());
                row.D = std::atol(f[3].c_str());
                row.tau = parse_surd(f[4]);
                row.sq = rat(f[5]);
                row.A = rat(f[6]);
                row.K = rat(f[7]);
                row.halfLogE = f[8];
                row.mStar = f[9];
                row.irrFlag = f[10] == "Y";
                r.t1.push_back(std::move(row));
            } else if (f[0] == "T2") {
                if (f.size() != 10) throw RegistryCorrupt("bad T2 record: " + line);
                Table2Row row;
                row.tag = f[1];
                row.multiplier = parse_multiplier(f[2]);
                row.disc = std::atol(f[3].c_str());
                row.a1 = rat(f[4]);
                row.A = rat(f[5]);
                row.b0 = rat(f[6]);
                row.K = rat(f[7]);
                row.D = std::atol(f[8].c_str());
                row.mu = f[9];
                r.t2.push_back(std::move(row));
            } else {
                throw RegistryCorrupt("unknown record kind: " + line);
            }
        }
        if (r.t1.size() != 44 || r.t2.size() != 39)
            throw RegistryCorrupt("unexpected row counts");
        return r;
    }();
    return reg;
}

using Clock = std::chrono::steady_clock;

long ms_since(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0)
        .count();
}

std::string fixed3(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}

}  // namespace

MPReal AlgebraicMultiplier::value(long bits) const {
    MPReal v = MPReal::of(1, bits);
    for (const auto& [base, expo] : factors) {
        if (base <= 0) throw Error("multiplier base must be positive");
        v *= exp(MPReal::of(expo, bits) * log(MPReal::of(base, bits)));
    }
    return v;
}

std::string AlgebraicMultiplier::str() const {
    if (factors.empty()) return "1";
    std::string s;
    for (const auto& [base, expo] : factors) {
        if (!s.empty()) s += "*";
        s += base.get_str() + "^(" + expo.get_str() + ")";
    }
    return s;
}

const std::vector<Table1Row>& table1() { return registry().t1; }
const std::vector<Table2Row>& table2() { return registry().t2; }

const Table1Row& table1_row(const std::string& tag) {
    for (const Table1Row& r : table1())
        if (r.tag == tag) return r;
    throw UnknownTag("no table row with tag " + tag);
}

const Table2Row* table2_find(const std::string& tag) {
    for (const Table2Row& r : table2())
        if (r.tag == tag) return &r;
    return nullptr;
}

const Table2Row& table2_row(const std::string& tag) {
    const Table2Row* p = table2_find(tag);
    if (!p) throw UnknownTag("no CF table row with tag " + tag);
    return *p;
}

unsigned long long registry_checksum() { return fnv1a(REGISTRY_DATA); }

bool VerificationReport::all_pass() const {
    for (const CheckResult& c : entries)
        if (c.status == CheckStatus::Fail) return false;
    return !entries.empty();
}

const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Skip: return "skip";
    }
    return "?";
}

namespace {

CheckResult make_result(const std::string& tag, const std::string& check,
                        Clock::time_point t0) {
    CheckResult c;
    c.tag = tag;
    c.check = check;
    c.ms = ms_since(t0);
    return c;
}

// (a) convergence constant against the published column
CheckResult check_convergence(const Table1Row& r1, const PrecPolicy& prec) {
    Clock::time_point t0 = Clock::now();
    CheckResult c;
    c.tag = r1.tag;
    c.check = "convergence";
    c.expected = r1.halfLogE;
    double tol = r1.tag == "4.1" ? 0.005 : 0.001;
    c.tol = fixed3(tol);
    FamilyParams fam{Rational(1), Rational(1), r1.A, r1.K, r1.D};
    auto data = convergence_data(fam, prec);
    if (std::holds_alternative<NonConvergent>(data)) {
        c.value = "nonconvergent";
        c.status = r1.halfLogE == "-" ? CheckStatus::Pass : CheckStatus::Fail;
    } else {
        double got = std::get<ConvergenceData>(data).halfLogE.d();
        c.value = fixed3(got);
        if (r1.halfLogE == "-") {
            c.status = CheckStatus::Fail;
        } else {
            double want = std::atof(r1.halfLogE.c_str());
            c.status = std::fabs(got - want) <= tol ? CheckStatus::Pass
                                                    : CheckStatus::Fail;
        }
    }
    c.ms = ms_since(t0);
    return c;
}

CheckResult check_limit(const Table1Row& r1, const Table2Row& r2,
                        const std::string& name, const MPReal& target,
                        const PrecPolicy& prec) {
    Clock::time_point t0 = Clock::now();
    CheckResult c;
    c.tag = r1.tag;
    c.check = "limit-" + name;
    c.expected = target.str(45);
    c.tol = "40 digits";
    try {
        FamilyParams fam = r2.family();
        MPReal v(64);
        if (name == "cf")
            v = limit(make_cf(fam), prec).value;
        else if (name == "hypergeometric")
            v = limit_T(fam, prec);
        else if (name == "fD")
            v = limit_fD(fam, prec);
        else
            v = cm_pipeline(r1.N, CMPoint{r1.tau}, fam, prec).L;
        c.value = v.str(45);
        c.status = agrees_to(v, target, 40) ? CheckStatus::Pass : CheckStatus::Fail;
    } catch (const std::exception& e) {
        c.value = std::string("error: ") + e.what();
        c.status = CheckStatus::Fail;
    }
    c.ms = ms_since(t0);
    return c;
}

CheckResult check_measure(const Table1Row& r1, const Table2Row& r2,
                          const PrecPolicy& prec) {
    Clock::time_point t0 = Clock::now();
    CheckResult c;
    c.tag = r1.tag;
    c.check = "measure";
    c.expected = r2.mu;
    double tol = r1.tag == "3.10" ? 0.5 : 0.001;
    c.tol = fixed3(tol);
    try {
        auto data = convergence_data(r2.family(), prec);
        if (std::holds_alternative<NonConvergent>(data)) {
            c.value = "nonconvergent";
            c.status = CheckStatus::Fail;
        } else {
            MPReal hle = std::get<ConvergenceData>(data).halfLogE;
            MPReal mstar = asymptotic_constants(r2.D, prec).mDstar;
            std::optional<MPReal> mu = mu_bound(hle, mstar);
            if (!mu) {
                c.value = "none";
                c.status = r2.mu == "-" ? CheckStatus::Pass : CheckStatus::Fail;
            } else {
                c.value = fixed3(mu->d());
                c.status = (r2.mu != "-" &&
                            std::fabs(mu->d() - std::atof(r2.mu.c_str())) <= tol)
                               ? CheckStatus::Pass
                               : CheckStatus::Fail;
            }
        }
    } catch (const std::exception& e) {
        c.value = std::string("error: ") + e.what();
        c.status = CheckStatus::Fail;
    }
    c.ms = ms_since(t0);
    return c;
}

CheckResult check_integrality(const Table1Row& r1, const Table2Row& r2,
                              const char* branch, long nMax) {
    Clock::time_point t0 = Clock::now();
    CheckResult c;
    c.tag = r1.tag;
    c.check = std::string("integrality-") + branch;
    c.expected = "all n <= " + std::to_string(nMax);
    c.tol = "exact";
    try {
        Rational v0 = branch[0] == 'q' ? Rational(1) : Rational(0);
        Rational v1 = branch[0] == 'q' ? r2.a1 : r2.b0;
        IntegralityReport rep = verify_integrality(r2.family(), v0, v1, nMax);
        long ok = 0;
        for (bool b : rep.pass) ok += b;
        c.value = (rep.part_i ? "part(i) " : "part(ii) ") + std::to_string(ok) +
                  "/" + std::to_string(nMax);
        c.status = rep.all_pass() ? CheckStatus::Pass : CheckStatus::Fail;
    } catch (const std::exception& e) {
        c.value = std::string("error: ") + e.what();
        c.status = CheckStatus::Fail;
    }
    c.ms = ms_since(t0);
    return c;
}

CheckResult check_hauptmodul(const Table1Row& r1, const PrecPolicy& prec) {
    Clock::time_point t0 = Clock::now();
    CheckResult c;
    c.tag = r1.tag;
    c.check = "hauptmodul";
    c.expected = r1.sq.get_str();
    c.tol = "30 digits";
    try {
        long wp = digits_to_bits(std::max(prec.target_digits, 30L) + 15);
        PrecPolicy inner = prec;
        inner.target_digits = std::max(prec.target_digits, 30L) + 10;
        MPComplex R = hauptmodul(r1.N, CMPoint{r1.tau}, inner);
        MPComplex one(MPReal::of(1, wp), MPReal::of(0, wp));
        MPComplex chk = (MPReal::of(2, wp) * R - one) * (MPReal::of(2, wp) * R - one);
        MPReal err = abs(chk - MPComplex::of(r1.sq, wp));
        MPReal ref = abs(MPComplex::of(r1.sq, wp));
        if (ref < MPReal::of(1, wp)) ref = MPReal::of(1, wp);
        MPReal bound =
            exp(MPReal::of(-30, wp) * log(MPReal::of(10, wp))) * ref;
        c.value = "error " + MPReal(err / ref).str(3);
        c.status = err < bound ? CheckStatus::Pass : CheckStatus::Fail;
    } catch (const std::exception& e) {
        c.value = std::string("error: ") + e.what();
        c.status = CheckStatus::Fail;
    }
    c.ms = ms_since(t0);
    return c;
}

CheckResult check_modeval(const Table1Row& r1, const PrecPolicy& prec) {
    Clock::time_point t0 = Clock::now();
    CheckResult c;
    c.tag = r1.tag;
    c.check = "modeval";
    c.expected = "residual < 1e-25";
    c.tol = "1e-25";
    try {
        PrecPolicy inner = prec;
        inner.target_digits = std::max(prec.target_digits, 30L);
        ModevalReport rep = verify_modeval(r1.N, CMPoint{r1.tau}, inner);
        long wp = rep.residual.prec();
        MPReal bound = exp(MPReal::of(-25, wp) * log(MPReal::of(10, wp)));
        c.value = "residual " + rep.residual.str(3) +
                  (rep.branch < 0 ? " (lower branch)" : "");
        c.status = rep.residual < bound ? CheckStatus::Pass : CheckStatus::Fail;
    } catch (const std::exception& e) {
        c.value = std::string("error: ") + e.what();
        c.status = CheckStatus::Fail;
    }
    c.ms = ms_since(t0);
    return c;
}

}  // namespace

std::vector<CheckResult> verify_row(const std::string& tag, const PrecPolicy& prec,
                                    long integrality_n) {
    const Table1Row& r1 = table1_row(tag);
    const Table2Row* r2 = table2_find(tag);
    std::vector<CheckResult> out;
    out.push_back(check_convergence(r1, prec));

    if (r2) {
        PrecPolicy lp = prec;
        lp.target_digits = std::max(prec.target_digits, 45L);
        Clock::time_point t0 = Clock::now();
        MPReal target(64);
        bool have_target = true;
        try {
            long wp = digits_to_bits(lp.target_digits + lp.guard());
            target = r2->multiplier.value(wp) * cs_value(BigInt(r2->disc), lp);
        } catch (const std::exception& e) {
            have_target = false;
            CheckResult c = make_result(tag, "limit-target", t0);
            c.value = std::string("error: ") + e.what();
            c.status = CheckStatus::Fail;
            out.push_back(c);
        }
        if (have_target) {
            for (const char* m : {"cf", "hypergeometric", "fD", "modular"})
                out.push_back(check_limit(r1, *r2, m, target, lp));
        }
        out.push_back(check_measure(r1, *r2, prec));
        out.push_back(check_integrality(r1, *r2, "q", integrality_n));
        out.push_back(check_integrality(r1, *r2, "p", integrality_n));
    } else {
        for (const char* name :
             {"limit-cf", "limit-hypergeometric", "limit-fD", "limit-modular",
              "measure", "integrality-q", "integrality-p"}) {
            CheckResult c;
            c.tag = tag;
            c.check = name;
            c.status = CheckStatus::Skip;
            c.value = "nonconvergent row";
            out.push_back(c);
        }
    }

    out.push_back(check_hauptmodul(r1, prec));
    out.push_back(check_modeval(r1, prec));
    return out;
}

VerificationReport run_all(const PrecPolicy& prec, int workers, long integrality_n) {
    const std::vector<Table1Row>& rows = table1();
    std::vector<std::vector<CheckResult>> slots(rows.size());
    if (workers <= 0)
        workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= rows.size()) return;
            slots[i] = verify_row(rows[i].tag, prec, integrality_n);
        }
    };
    std::vector<std::thread> pool;
    for (int i = 1; i < workers; ++i) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
    VerificationReport rep;
    for (std::vector<CheckResult>& s : slots)
        for (CheckResult& c : s) rep.entries.push_back(std::move(c));
    return rep;
}

std::string to_json_line(const CheckResult& c) {
    auto esc = [](const std::string& s) {
        std::string o;
        for (char ch : s) {
            if (ch == '"' || ch == '\\') o += '\\';
            o += ch;
        }
        return o;
    };
    std::ostringstream os;
    os << "{\"tag\":\"" << esc(c.tag) << "\",\"check\":\"" << esc(c.check)
       << "\",\"status\":\"" << status_name(c.status) << "\",\"value\":\""
       << esc(c.value) << "\",\"expected\":\"" << esc(c.expected)
       << "\",\"tol\":\"" << esc(c.tol) << "\",\"ms\":" << c.ms << "}";
    return os.str();
}

}  // namespace cfcs

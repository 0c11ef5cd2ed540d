#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cfcs/cf.hpp"
#include "cfcs/denom.hpp"
#include "cfcs/family.hpp"
#include "cfcs/functions.hpp"
#include "cfcs/modular.hpp"
#include "cfcs/registry.hpp"

namespace {

using namespace cfcs;

Rational parse_rational(const std::string& s) {
    try {
        Rational r(s);
        r.canonicalize();
        return r;
    } catch (const std::exception&) {
        throw CLI::ValidationError("expected a rational p or p/q, got '" + s + "'");
    }
}

void print_text(const CheckResult& c) {
    std::printf("%-5s %-22s %-4s value=%s expected=%s tol=%s (%ld ms)\n",
                c.tag.c_str(), c.check.c_str(), status_name(c.status),
                c.value.c_str(), c.expected.c_str(), c.tol.c_str(), c.ms);
}

int cmd_verify(const std::string& tag, bool all, long digits,
               const std::string& format) {
    PrecPolicy prec;
    prec.target_digits = digits;
    VerificationReport rep;
    if (all) {
        rep = run_all(prec);
    } else {
        rep.entries = verify_row(tag, prec);
    }
    for (const CheckResult& c : rep.entries) {
        if (format == "json")
            std::cout << to_json_line(c) << "\n";
        else
            print_text(c);
    }
    return rep.all_pass() ? 0 : 1;
}

int cmd_limit(const std::string& tag, long digits, const std::string& method) {
    PrecPolicy prec;
    prec.target_digits = digits;
    const Table2Row& row = table2_row(tag);
    FamilyParams fam = row.family();
    MPReal v(64);
    if (method == "cf")
        v = limit(make_cf(fam), prec).value;
    else if (method == "hypergeometric")
        v = limit_T(fam, prec);
    else if (method == "fD")
        v = limit_fD(fam, prec);
    else
        v = cm_pipeline(table1_row(tag).N, CMPoint{table1_row(tag).tau}, fam, prec)
                .L;
    std::cout << v.str(digits) << "\n";
    return 0;
}

int cmd_convergents(const std::string& tag, long n, bool normalized) {
    const Table2Row& row = table2_row(tag);
    if (normalized) {
        NormalizedPQ pq = normalized_pq(row.family(), n);
        for (long k = 0; k <= n; ++k)
            std::cout << k << " " << rational_str(pq.p[k]) << " "
                      << rational_str(pq.q[k]) << "\n";
    } else {
        ConvergentSeq s = convergents(make_cf(row.family()), n);
        for (long k = 0; k <= n; ++k)
            std::cout << k << " " << rational_str(s.p[k]) << " "
                      << rational_str(s.q[k]) << "\n";
    }
    return 0;
}

int cmd_denom(long D, long n, bool star) {
    DenomData d = d_values(D, n);
    std::cout << (star ? d.dStar : d.dD).get_str() << "\n";
    if (star && !d.removedPrimes.empty()) {
        std::cout << "removed:";
        for (long p : d.removedPrimes) std::cout << " " << p;
        std::cout << "\n";
    }
    return 0;
}

int cmd_slope(long D, long n) {
    PrecPolicy prec;
    prec.target_digits = 20;
    std::cout << empirical_slope(D, n, prec).str(15) << "\n";
    return 0;
}

int cmd_measure(const std::string& tag) {
    const Table2Row& row = table2_row(tag);
    PrecPolicy prec;
    auto data = convergence_data(row.family(), prec);
    if (std::holds_alternative<NonConvergent>(data)) {
        std::cout << "nonconvergent\n";
        return 1;
    }
    MPReal hle = std::get<ConvergenceData>(data).halfLogE;
    MPReal mstar = asymptotic_constants(row.D, prec).mDstar;
    std::optional<MPReal> mu = mu_bound(hle, mstar);
    if (!mu) {
        std::cout << "none (log|E|/2 = " << hle.str(8)
                  << " does not exceed m* = " << mstar.str(8) << ")\n";
        return 0;
    }
    std::cout << mu->str(10) << "\n";
    return 0;
}

int cmd_cs(long disc, long digits) {
    PrecPolicy prec;
    prec.target_digits = digits;
    std::cout << cs_value(BigInt(disc), prec).str(digits) << "\n";
    return 0;
}

int cmd_classical(const std::string& kind, const Rational& a, const Rational& b,
                  const Rational& c, const Rational& z, long n) {
    ClassicalKind k;
    if (kind == "euler-power")
        k = ClassicalKind::EulerPower;
    else if (kind == "laguerre-sym")
        k = ClassicalKind::LaguerreSym;
    else if (kind == "laguerre-shift")
        k = ClassicalKind::LaguerreShift;
    else if (kind == "gauss-ratio")
        k = ClassicalKind::GaussRatio;
    else if (kind == "gauss-ratio-halfparam")
        k = ClassicalKind::GaussRatioHalfparam;
    else if (kind == "fd-cf")
        k = ClassicalKind::FDCF;
    else
        throw CLI::ValidationError("unknown kind '" + kind + "'");
    GeneralCF cf = classical_cf(k, ClassicalParams{a, b, c, z});
    std::cout << to_bracket(cf) << "\n";
    ConvergentSeq s = convergents(cf, n);
    std::cout << "p(" << n << ")/q(" << n << ") = " << rational_str(s.p[n]) << " / "
              << rational_str(s.q[n]) << "\n";
    PrecPolicy prec;
    prec.target_digits = 30;
    long wp = prec.work_bits();
    MPReal v = MPReal::of(s.p[n], wp) / MPReal::of(s.q[n], wp);
    std::cout << "= " << v.str(30) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Continued fractions for gamma-quotient constants: "
                 "verification and computation toolkit"};
    app.require_subcommand(1);

    std::string tag, format = "text", method = "cf", kind;
    long digits = 40, n = 10, D = 6, disc = -3;
    bool all = false, normalized = false, star = false;
    std::string a_s = "1", b_s = "0", c_s = "0", z_s = "0";

    CLI::App* verify = app.add_subcommand("verify", "Run the per-row check suite");
    verify->add_flag("--all", all, "verify every table row");
    verify->add_option("--tag", tag, "single row tag, e.g. 1.4");
    verify->add_option("--digits", digits, "working precision in decimal digits");
    verify->add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    CLI::App* limit = app.add_subcommand("limit", "Print a CF limit");
    limit->add_option("--tag", tag)->required();
    limit->add_option("--digits", digits);
    limit->add_option("--method", method)
        ->check(CLI::IsMember({"cf", "hypergeometric", "fD", "modular"}));

    CLI::App* conv = app.add_subcommand("convergents", "Exact convergents");
    conv->add_option("--tag", tag)->required();
    conv->add_option("-n", n)->required();
    conv->add_flag("--normalized", normalized, "divide by the normalizer f(n)");

    CLI::App* denom = app.add_subcommand("denom", "lcm denominators d_D(n)");
    denom->add_option("--D", D)->required()->check(CLI::IsMember({2, 3, 4, 6}));
    denom->add_option("-n", n)->required();
    denom->add_flag("--star", star, "divide out the excluded primes");

    CLI::App* slope = app.add_subcommand("slope", "log(d*_D(n))/n by sieve");
    slope->add_option("--D", D)->required()->check(CLI::IsMember({2, 3, 4, 6}));
    slope->add_option("-n", n)->required();

    CLI::App* measure = app.add_subcommand("measure", "Irrationality measure bound");
    measure->add_option("--tag", tag)->required();

    CLI::App* cs = app.add_subcommand("cs", "Gamma-quotient constant CS(disc)");
    cs->add_option("--disc", disc)->required();
    cs->add_option("--digits", digits);

    CLI::App* classical = app.add_subcommand("classical", "Classical CF constructions");
    classical->add_option("--kind", kind)->required();
    classical->add_option("--a", a_s)->required();
    classical->add_option("--b", b_s);
    classical->add_option("--c", c_s);
    classical->add_option("--z", z_s)->required();
    classical->add_option("-n", n)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) {
            if (all != tag.empty()) {  // exactly one of --all / --tag
                std::cerr << "verify: pass exactly one of --all or --tag\n";
                return 2;
            }
            return cmd_verify(tag, all, digits, format);
        }
        if (limit->parsed()) return cmd_limit(tag, digits, method);
        if (conv->parsed()) return cmd_convergents(tag, n, normalized);
        if (denom->parsed()) return cmd_denom(D, n, star);
        if (slope->parsed()) return cmd_slope(D, n);
        if (measure->parsed()) return cmd_measure(tag);
        if (cs->parsed()) return cmd_cs(disc, digits);
        if (classical->parsed())
            return cmd_classical(kind, parse_rational(a_s), parse_rational(b_s),
                                 parse_rational(c_s), parse_rational(z_s), n);
    } catch (const UnknownTag& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

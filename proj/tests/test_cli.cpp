// exit-code and output contract of the command-line tool
#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

namespace {

int g_failures = 0;

struct RunResult {
    int code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(SYMWEB_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, {}};
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const std::string& name) { return std::string(SYMWEB_DATA_DIR) + "/" + name; }

void expect(const std::string& what, bool cond) {
    std::printf("%s: %s\n", cond ? "ok" : "FAIL", what.c_str());
    if (!cond) ++g_failures;
}

} // namespace

int main() {
    // exit 0: success paths
    expect("disc prints the polynomial",
           run_cli("disc " + data("two_lines.swt")).out == "X0*X1\n");
    {
        auto r = run_cli("grcheck " + data("square.swt"));
        expect("grcheck nonreduced exits 0", r.code == 0 && r.out == "nonreduced\n");
    }
    {
        auto r = run_cli("equiv " + data("two_lines_f3.swt") + " " + data("conic_f3.swt") +
                         " --group cong");
        expect("inequivalent exits 0", r.code == 0 && r.out == "inequivalent\n");
    }

    {
        auto r = run_cli("grcheck " + data("two_lines.swt"));
        expect("grcheck reduced exits 0", r.code == 0 && r.out == "geometrically_reduced\n");
    }
    {
        // normalized action by (2 I_3, I_2) over F_5 scales every matrix by
        // det(2I)^{-1} 2 = 2^{-2} = 4
        auto r = run_cli("act " + data("two_lines_f5.swt") +
                         " --A \"2 0 0;0 2 0;0 0 2\" --P \"1 0;0 1\" --normalized");
        expect("normalized scalar action",
               r.code == 0 && r.out.find("4 0\n0 0\n") != std::string::npos &&
                   r.out.find("0 0\n0 4\n") != std::string::npos);
    }

    // exit 1: usage errors
    expect("unknown subcommand exits 1", run_cli("frobnicate").code == 1);
    expect("missing required flag exits 1",
           run_cli("census --field F3 --m 2 --n 1").code == 1);
    expect("unknown flag exits 1",
           run_cli("disc " + data("two_lines.swt") + " --frob").code == 1);
    expect("bad --group exits 1",
           run_cli("equiv " + data("two_lines_f3.swt") + " " + data("two_lines_f3.swt") +
                   " --group nope")
                   .code == 1);

    // exit 2: parse and file errors
    expect("missing file exits 2", run_cli("disc /nonexistent.swt").code == 2);
    {
        std::string bad = std::string(SYMWEB_CLI_PATH) + ".bad.swt";
        FILE* f = fopen(bad.c_str(), "w");
        fputs("field F 4\nm 2\nn 1\n", f);
        fclose(f);
        expect("malformed .swt exits 2", run_cli("disc " + bad).code == 2);
        std::remove(bad.c_str());
    }
    expect("malformed census polynomial exits 2",
           run_cli("census --field F3 --m 2 --n 1 --disc X9").code == 2);

    // exit 3: domain errors
    {
        auto r = run_cli("grcheck " + data("zero_disc.swt"));
        expect("grcheck zero disc exits 3", r.code == 3 && r.out == "zero_disc\n");
    }
    expect("fiber on a nonreduced web exits 3",
           run_cli("fiber " + data("square.swt") + " --outdir /tmp").code == 3);
    expect("act with singular A exits 3",
           run_cli("act " + data("two_lines_f3.swt") +
                   " --A \"0 0 0;0 0 0;0 0 0\" --P \"1 0;0 1\"")
                   .code == 3);
    expect("congruence over Q exits 3",
           run_cli("equiv " + data("two_lines.swt") + " " + data("two_lines.swt") +
                   " --group cong")
                   .code == 3);
    expect("census over Q exits 3",
           run_cli("census --field Q --m 2 --n 1 --disc X0*X1").code == 3);
    expect("autgroup with n <= m exits 3",
           run_cli("autgroup " + data("two_lines_f3.swt")).code == 3);

    // exit 4: resource caps
    expect("census beyond --max-enum exits 4",
           run_cli("census --field F3 --m 2 --n 1 --disc X0*X1 --max-enum 100").code == 4);
    expect("equiv beyond --max-enum exits 4",
           run_cli("equiv " + data("two_lines_f3.swt") + " " + data("two_lines_f3.swt") +
                   " --group cong --max-enum 3")
                   .code == 4);

    if (g_failures) {
        std::printf("%d CLI check(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all CLI checks passed\n");
    return 0;
}

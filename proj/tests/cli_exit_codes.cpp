// Exit-status contract of the CLI: 0 on success, 2 for input errors, 3 for
// computation errors, and analyze fails (3) only when every series fails.
//
// Usage: cli_exit_codes <path-to-cli-binary>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string g_cli;
int g_failures = 0;

int run(const std::string& args) {
    const std::string cmd = g_cli + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return status < 0 ? status : (status >> 8) & 0xff;
}

void expect_code(const std::string& args, int want) {
    const int got = run(args);
    if (got != want) {
        std::printf("FAIL: '%s' exited %d, expected %d\n", args.c_str(), got, want);
        ++g_failures;
    }
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <cli-binary>\n", argv[0]);
        return 64;
    }
    g_cli = argv[1];
    const fs::path dir = fs::temp_directory_path() / "tsbound_exit_codes";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string d = (dir / "").string();

    // success path
    {
        std::ofstream out(dir / "ok.csv");
        out << "a\n";
        for (int i = 0; i < 400; ++i) out << 0.5 * i + ((i * 37) % 11) << "\n";
    }
    expect_code("analyze " + d + "ok.csv --out " + d + "ok_ --past-len 16 --horizon 16 --stride 16",
                0);

    // input errors -> 2
    expect_code("analyze " + d + "missing.csv --out " + d + "x_", 2);
    expect_code("fit-law " + d + "missing.csv --out " + d + "x_", 2);
    {
        std::ofstream out(dir / "tiny_metrics.csv");
        out << "series_id,domain_tag,complexity_joint,mse,mae\na,,1,0.5,0.4\nb,,2,0.6,0.5\n";
    }
    expect_code("fit-law " + d + "tiny_metrics.csv --out " + d + "x_", 2);

    // computation error -> 3 (law fit degenerate: all complexities zero)
    {
        std::ofstream out(dir / "zero_metrics.csv");
        out << "series_id,domain_tag,complexity_joint,mse,mae\n";
        for (int i = 0; i < 5; ++i) out << "s" << i << ",,0,0.5,0.4\n";
    }
    expect_code("fit-law " + d + "zero_metrics.csv --out " + d + "x_", 3);

    // analyze exits nonzero only when every series fails
    {
        std::ofstream out(dir / "short.csv");
        out << "a,b\n1,2\n2,1\n"; // both too short for any metric
    }
    expect_code("analyze " + d + "short.csv --out " + d + "s_", 3);
    {
        std::ofstream out(dir / "mixed.csv");
        out << "good,bad\n";
        for (int i = 0; i < 400; ++i) {
            out << 0.5 * i + ((i * 37) % 11) << ",";
            if (i < 2) out << i;
            out << "\n";
        }
    }
    expect_code("analyze " + d + "mixed.csv --out " + d + "m_ --past-len 16 --horizon 16 --stride 16",
                0);

    fs::remove_all(dir);
    if (g_failures == 0) std::printf("exit-code contract: all checks passed\n");
    return g_failures;
}

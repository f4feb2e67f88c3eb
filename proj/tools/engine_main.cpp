#include "qpengine/session.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int run_one(const std::string& path, bool quiet)
{
    qp::RunResult r = qp::run_document(slurp(path));
    if (!quiet)
        std::cout << r.report_json;
    return r.exit_code;
}

int run_corpus(const std::string& dir)
{
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json" &&
            e.path().string().find(".report.") == std::string::npos)
            files.push_back(e.path());
    std::sort(files.begin(), files.end());

    int workers = 1;
    if (const char* env = std::getenv("ENGINE_WORKERS"))
        workers = std::max(1, atoi(env));

    std::vector<std::pair<fs::path, qp::RunResult>> results(files.size());
    auto work = [&](size_t i) {
        results[i] = {files[i], qp::run_document(slurp(files[i].string()))};
    };
    if (workers <= 1) {
        for (size_t i = 0; i < files.size(); ++i)
            work(i);
    }
    else {
        std::vector<std::future<void>> futs;
        for (size_t i = 0; i < files.size(); ++i) {
            futs.push_back(std::async(std::launch::async, work, i));
            if ((int)futs.size() >= workers) {
                for (auto& f : futs)
                    f.get();
                futs.clear();
            }
        }
        for (auto& f : futs)
            f.get();
    }

    int worst = 0;
    for (const auto& [path, r] : results) {
        fs::path out = path;
        out.replace_extension(".report.json");
        std::ofstream o(out);
        o << r.report_json;
        std::cout << path.filename().string() << ": exit " << r.exit_code << "\n";
        worst = std::max(worst, r.exit_code);
    }
    return worst;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"symbolic engine for deformed dg preprojective algebras"};
    app.require_subcommand(1);

    std::string file, dir;
    bool quiet = false;
    auto* run = app.add_subcommand("run", "run a single session document");
    run->add_option("file", file, "input JSON document")->required();
    run->add_flag("-q,--quiet", quiet, "suppress the report on stdout");

    auto* corpus = app.add_subcommand("corpus", "run every *.json document in a directory");
    corpus->add_option("dir", dir, "fixture directory")->required();

    auto* schema = app.add_subcommand("schema", "print the input schema");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return run_one(file, quiet);
        if (corpus->parsed())
            return run_corpus(dir);
        if (schema->parsed()) {
            std::cout << qp::schema_text();
            return 0;
        }
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

#include "subleak/io.hpp"

#include <fstream>
#include <sstream>

#include "subleak/error.hpp"

namespace subleak {

void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        require_data(out.good(), "io: cannot write " + tmp.string());
        out << content;
        require_data(out.good(), "io: write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    require_data(in.good(), "io: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace subleak

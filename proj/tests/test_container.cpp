#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "wct/container.hpp"

using namespace wct;

namespace {

std::filesystem::path tmp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("container round-trip preserves header and payload") {
    Container c;
    c.kind = "gtable";
    c.n = 3;
    c.k = 2;
    c.dims = {4, 7};
    c.meta = {{"s_max", 1.25}, {"note", "round-trip"}};
    c.payload.resize(28);
    for (size_t i = 0; i < c.payload.size(); ++i) c.payload[i] = 0.125 * i - 1.0;

    auto path = tmp_file("wct_roundtrip.wct");
    write_container(path.string(), c);
    auto r = read_container(path.string());
    CHECK(r.kind == c.kind);
    CHECK(r.n == 3);
    CHECK(r.k == 2);
    CHECK(r.dims == c.dims);
    CHECK(r.meta["s_max"] == 1.25);
    CHECK(r.payload == c.payload);

    // rewriting what was read yields an identical file
    auto path2 = tmp_file("wct_roundtrip2.wct");
    write_container(path2.string(), r);
    std::ifstream f1(path, std::ios::binary), f2(path2, std::ios::binary);
    std::string b1((std::istreambuf_iterator<char>(f1)), {});
    std::string b2((std::istreambuf_iterator<char>(f2)), {});
    CHECK(b1 == b2);
    std::filesystem::remove(path);
    std::filesystem::remove(path2);
}

TEST_CASE("streaming writer and reader agree with the one-shot API") {
    auto path = tmp_file("wct_stream.wct");
    std::vector<double> data(60);
    for (size_t i = 0; i < data.size(); ++i) data[i] = std::sin(0.3 * i);
    {
        ContainerWriter w(path.string(), "cone", 3, 0, {5, 4, 3}, {{"psi", 4}});
        for (int u = 0; u < 5; ++u) w.append(std::span<const double>(data).subspan(u * 12, 12));
        w.close();
    }
    auto whole = read_container(path.string());
    CHECK(whole.payload == data);

    ContainerReader r(path.string());
    CHECK(r.kind() == "cone");
    CHECK(r.dims() == std::vector<std::uint64_t>{5, 4, 3});
    CHECK(r.remaining() == 60);
    std::vector<double> chunk(12), got;
    while (r.remaining()) {
        r.read(chunk);
        got.insert(got.end(), chunk.begin(), chunk.end());
    }
    CHECK(got == data);
    std::filesystem::remove(path);
}

TEST_CASE("size mismatches are detected") {
    auto path = tmp_file("wct_bad.wct");
    {
        ContainerWriter w(path.string(), "cone", 2, 1, {2, 3}, {});
        std::vector<double> part(3, 1.0);
        w.append(part);
        CHECK_THROWS(w.close());  // 3 of 6 values written
    }
    std::filesystem::remove(path);

    // truncated payload on disk
    Container c;
    c.kind = "image";
    c.dims = {8};
    c.payload.assign(8, 2.0);
    write_container(path.string(), c);
    std::filesystem::resize_file(path, std::filesystem::file_size(path) - 16);
    ContainerReader r(path.string());
    std::vector<double> buf(8);
    CHECK_THROWS(r.read(buf));
    std::filesystem::remove(path);

    // not a container at all
    std::ofstream(tmp_file("wct_junk.wct")) << "plainly not binary";
    CHECK_THROWS(ContainerReader(tmp_file("wct_junk.wct").string()));
    std::filesystem::remove(tmp_file("wct_junk.wct"));
}

// Times the OpenMP kernels against their serial references.

#include <chrono>
#include <cstdio>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "touchless/ctm.hpp"
#include "touchless/image.hpp"
#include "touchless/reference.hpp"
#include "touchless/skin.hpp"
#include "touchless/synth.hpp"

using namespace touchless;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
    fn();  // warm up
    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) fn();
    double total =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    return total / reps;
}

void row(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-22s %10.3f ms %10.3f ms %8.2fx\n", name, serial_ms, parallel_ms,
                parallel_ms > 0 ? serial_ms / parallel_ms : 0.0);
}

}  // namespace

int main() {
    Scenario sc;
    sc.tpl = load_template(std::string(TOUCHLESS_DATA) + "/templates/foot.tpl");
    sc.frames = 1;
    sc.seed = 9;
    sc.clutter = 1.0;
    SynthResult scene = generate(sc);
    const Frame& rgb = scene.frames[0];
    const Frame gray = to_grayscale(rgb);
    const int reps = 20;

#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP, both columns are serial\n");
#endif
    std::printf("%-22s %13s %13s %9s\n", "kernel (640x480)", "serial", "parallel", "speedup");

    row("to_grayscale",
        time_ms([&] { serial::to_grayscale(rgb); }, reps),
        time_ms([&] { to_grayscale(rgb); }, reps));

    row("detect_edges",
        time_ms([&] { serial::detect_edges(gray, 80); }, reps),
        time_ms([&] { detect_edges(gray, 80); }, reps));

    row("downscale 0.25",
        time_ms([&] { serial::downscale(rgb, 0.25); }, reps),
        time_ms([&] { downscale(rgb, 0.25); }, reps));

    row("skin_membership",
        time_ms([&] { serial::skin_membership(rgb, SkinRange{}); }, reps),
        time_ms([&] { skin_membership(rgb, SkinRange{}); }, reps));

    // the trellis kernel parallelizes over nodes; compare 1 thread vs all
    Frame ctm_frame = downscale(gray, 0.25);
    EdgeImage edges = detect_edges(ctm_frame, 80);
    ContourTemplate tpl = scale_template(sc.tpl, 0.25);
    ShiftDomain domain = ShiftDomain::full(tpl, edges.width, edges.height);
    auto run_match = [&] { viterbi_match(tpl, edges, domain); };
#ifdef _OPENMP
    int threads = omp_get_max_threads();
    omp_set_num_threads(1);
    double vs = time_ms(run_match, reps);
    omp_set_num_threads(threads);
    double vp = time_ms(run_match, reps);
#else
    double vs = time_ms(run_match, reps);
    double vp = vs;
#endif
    row("viterbi_match 160x120", vs, vp);

    return 0;
}

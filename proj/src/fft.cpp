#include "fdcv/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace fdcv::fft {
namespace {

class PlanCache {
public:
    ~PlanCache()
    {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    // Planning is not thread-safe in FFTW; execution with fftw_execute_dft is.
    fftw_plan get(std::size_t n, int sign)
    {
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(n, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        std::vector<cplx> scratch(n);
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache()
{
    static PlanCache instance;
    return instance;
}

void execute(std::span<cplx> data, int sign)
{
    if (data.size() <= 1) return;
    fftw_plan plan = cache().get(data.size(), sign);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, buf, buf);
}

}  // namespace

void forward_inplace(std::span<cplx> data) { execute(data, FFTW_FORWARD); }
void backward_inplace(std::span<cplx> data) { execute(data, FFTW_BACKWARD); }

std::vector<cplx> forward(std::span<const double> x)
{
    std::vector<cplx> out(x.begin(), x.end());
    forward_inplace(out);
    return out;
}

std::vector<cplx> forward(std::span<const cplx> x)
{
    std::vector<cplx> out(x.begin(), x.end());
    forward_inplace(out);
    return out;
}

std::vector<cplx> backward(std::span<const cplx> x)
{
    std::vector<cplx> out(x.begin(), x.end());
    backward_inplace(out);
    return out;
}

}  // namespace fdcv::fft

// Leading-edge throttle for scroll and resize handlers.
function throttle(fn, intervalMs) {
    var last = 0;
    return function () {
        var now = Date.now();
        if (now - last < intervalMs) return;
        last = now;
        fn.apply(this, arguments);
    };
}

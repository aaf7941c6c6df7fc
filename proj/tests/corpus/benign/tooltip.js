// Positions a shared tooltip element near its anchor on hover.
function attachTooltip(anchor, text) {
    var tip = document.getElementById("shared-tooltip");
    anchor.addEventListener("mouseenter", function () {
        tip.textContent = text;
        var rect = anchor.getBoundingClientRect();
        tip.style.left = rect.left + rect.width / 2 + "px";
        tip.style.top = rect.top - 8 + "px";
        tip.style.visibility = "visible";
    });
    anchor.addEventListener("mouseleave", function () {
        tip.style.visibility = "hidden";
    });
}

// Expanding sections for the FAQ page. Only one section open at a time.
function initAccordion(root) {
    var headers = root.querySelectorAll(".accordion-header");
    for (var i = 0; i < headers.length; i++) {
        headers[i].addEventListener("click", function () {
            var body = this.nextElementSibling;
            var open = body.style.maxHeight !== "";
            var all = root.querySelectorAll(".accordion-body");
            for (var k = 0; k < all.length; k++) {
                all[k].style.maxHeight = "";
            }
            if (!open) {
                body.style.maxHeight = body.scrollHeight + "px";
            }
        });
    }
}
